from haarlab.carleson.sequences import (IndexedSequence, sequence_mu, sequence_nu, sequence_eta, combine_sequences,
                                        random_sequence, product_sequence, check_alpha, ALPHA_RULES, COMBINE_MODES)
from haarlab.carleson.intensity import carleson_intensity, intensity_levels, subtree_sums
from haarlab.carleson.stopping import (StoppingFamily, stopping_family, stopping_families, trivial_family,
                                       trivial_families, lift_sequence, mean_ratio_range)
from haarlab.carleson.lemmas import (LemmaReport, little_lemma_check, alphabeta_lemma_check, alphabeta_constant,
                                     weighted_carleson_check, folk_lemma_check, lift_lemma_check,
                                     mu_nu_intensity_check, proposition_checks)
