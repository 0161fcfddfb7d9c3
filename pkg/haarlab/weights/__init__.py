from haarlab.weights.families import WeightFamily, generate_weight, FAMILY_KINDS
from haarlab.weights.characteristics import (ap_characteristic, rhp_characteristic, cs_characteristic,
                                             doubling_constant, characteristic_report, CharacteristicReport,
                                             tree_max)
from haarlab.weights.relations import class_relations_report, measure_sandwich_check, RelationCheck, compare
