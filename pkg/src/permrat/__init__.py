"""permrat: exact arithmetic for permutation rational functions over finite fields."""

from .errors import BudgetExceeded, VerificationFailure
from .field import (FieldElement, FiniteField, GF, descend, embed,
                    field_from_text, field_to_text, frobenius, is_square,
                    lies_in, prime_field, sqrt, trace)
from .polys import (Poly, factor, find_irreducible, is_irreducible,
                    minimal_polynomial, poly_gcd, roots_in, squarefree_part)
from .ratfunc import (INFINITY, BivarPoly, Moebius, RatFunc, all_moebius,
                      branch_points, coeff_frobenius, compose, derivative,
                      difference_numerator, evaluate, is_left_component,
                      is_separable, left_component_witness, moebius_from_triple,
                      moebius_inverse, normalize, p1_points, symmetries)
from .textforms import (element_from_text, element_to_text, poly_from_text,
                        poly_to_text, ratfunc_from_text, ratfunc_to_text)
from .permtest import (Exceptional, NotExceptional, Undetermined,
                       decide_exceptional, exceptionality_bound,
                       is_exceptional_additive, is_permutation)
from .families import (difference_factorization_check, is_additive,
                       quartic_exceptional, quartic_symmetries, redei,
                       redei_canonical, roots_form_group, table1,
                       table1_entries)
from .classify import (ClassificationResult, FamilyTag, SearchClass,
                       StabilizerReport, classify, count_classes_exceptional,
                       count_total, count_total_assembled,
                       count_total_bruteforce, equivalence_witness, search,
                       search_normal_form, stabilizer, stabilizer_size)
from .monodromy import (GroupPair, Subgroup, all_subgroups, is_primitive,
                        monodromy_filter)

__all__ = [name for name in dir() if not name.startswith("_")]
