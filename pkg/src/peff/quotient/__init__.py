"""The quotient completion: carriers with realized equivalence relations."""
from .qobject import (QArrow, QObject, delta, delta_arrow, discrete_relation, find_law_witnesses, mk_qobject,
                      parity_nat, parity_relation, q_compose, q_identity, qarrow, qarrows_equal,
                      qarrows_equal_witness)
from .structure import (QCoproduct, QEqualizer, QExponential, QImage, QList, QProduct, coequalizer_factor,
                        effectiveness, is_q_mono, kernel_object, kernel_pair, q_coproduct, q_equalizer,
                        q_exponential, q_image, q_initial, q_list, q_product, q_structure, q_terminal,
                        quotient_of, stable_along_projection)
from .props import (classify, comprehend, ct_in_peff, eq_relation, is_saturated, mono_to_prop, omega,
                    omega_naturality, omega_roundtrips, peff_exists, peff_prop_membership, peff_prop_subst,
                    prop_to_mono, saturation_witness, subobject_roundtrip, subst_well_defined, unique_choice)
from .families import (ACTION_LAWS, S_LAWS, IDENTITY_ACTION, law_tri, search_law, fibre_relation_base,
                       discrete_fibre_relation, small_discrete_relation, top_fibre_relation,
                       DepFamilyQ, mk_dep_family, constant_family, FamMorphism, fam_morphism,
                       fam_morphisms_equivalent, fam_terminal, fam_initial, fam_product,
                       fam_coproduct, fam_list, fam_exponential, fam_equalizer, fam_image,
                       famq_structure, is_small_family, k_relation, k_object, k_functor,
                       k_on_morphisms, k_preserves_terminal, k_preserves_product,
                       k_preserves_equalizer, k_faithful, k_full, class_count, is_small_map,
                       pullback_family, small_pullback_check, delta_c, delta_s, delta_p,
                       delta_p_entailment, delta_ps, delta_embeddings)
