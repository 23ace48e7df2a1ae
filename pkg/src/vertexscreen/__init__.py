"""Exact vertex-superalgebra calculus over Q(k): root data, lambda
brackets, screening operators, kernels and BRST reduction."""

from .scalars import QQ, RationalFunction, RationalFunctionField
from .superdata import (SuperRootDatum, GoodGrading, RestrictedBase,
                        LevelForm, ChiFunctional, DatumError, NotGoodGrading,
                        DegreeMismatch, build_sl, build_osp, good_grading,
                        restricted_base, tau_form, chi, load_datum,
                        datum_from_json, datum_to_json)
from .vertexcalc import (FieldExpr, GenSystem, Module, comb,
                         apply_field_coeff, bracket, derive, field_state,
                         graded_basis, mode_apply, normal_order,
                         normal_order_list, state_field, sugawara_field,
                         CriticalLevel, GradingMismatch, NonAbelianMomentum,
                         NonVacuumModule, UndefinedAction, UnknownGenerator)
from .screening import (ScreeningContext, ScreeningOp, KernelReport,
                        NonCartanZeroPart, DegenerateForm,
                        exponential_screenings, generic_screenings,
                        expected_character, character_of_generators,
                        kernel_basis)
from .walgebras import (BRSTComplex, WBnModel, W2nModel, WakimotoMap,
                        TopCoefficientMismatch, BracketMismatch,
                        NonZeroCharge, build_complex, build_wbn, build_w2n,
                        miura_project, verify_fs, verify_wbn_screening)
from .presets import PRESETS, build_preset, preset_context, preset_names

__version__ = "0.1.0"
