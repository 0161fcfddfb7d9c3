import sys
import pandas

if len(sys.argv) < 2:
    print('please specify rows.csv of a bound sweep')
    exit(1)

rows = pandas.read_csv(sys.argv[1])
ts = sorted(rows['t'].unique())
complexities = sorted(set(zip(rows['m'], rows['n'])))

tableData = []
for m, n in complexities:
    scores = ['({},{})'.format(m, n)]
    for t in ts:
        selected = rows[(rows['t'] == t) & (rows['m'] == m) & (rows['n'] == n)]
        scores.append('{:.2e}'.format(selected['ratio'].max()))
    tableData.append(scores)

# bold the largest ratio of every column
for i in range(1, len(ts) + 1):
    scores = [float(row[i]) for row in tableData]
    for row in tableData:
        if float(row[i]) == max(scores):
            row[i] = '\\textbf{' + row[i] + '}'

print(' & '.join(['(m,n)'] + ['t={:g}'.format(t) for t in ts]) + ' \\\\')
for row in tableData:
    print(' & '.join(row) + ' \\\\')
