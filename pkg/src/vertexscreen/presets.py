"""Named algebra/grading presets used throughout the test and demo suites.

Each preset fixes a simple Lie superalgebra, grading labels on the simple
roots (doubled integers) and the support of the nilpotent f (a set of
positive roots a, with f = sum of e_{-a}).
"""

from fractions import Fraction

from .scalars import QQ, RationalFunctionField
from .screening import ScreeningContext
from .superdata import (build_osp, build_sl, chi, good_grading,
                        restricted_base, tau_form)

PRESETS = {
    # regular nilpotents: g_0 is the Cartan subalgebra
    "sl2-regular": ("sl", 2, {"a1": 2}, ["a1"]),
    "sl3-regular": ("sl", 3, {"a1": 2, "a2": 2}, ["a1", "a2"]),
    "osp1_2-regular": ("osp", 1, {"b1": 1}, ["2b1"]),
    "osp1_4-regular": ("osp", 2, {"b1": 2, "b2": 1}, ["b1", "2b2"]),
    "osp1_6-regular": ("osp", 3, {"b1": 2, "b2": 2, "b3": 1},
                       ["b1", "b2", "2b3"]),
    # subregular nilpotent of sl_n with the even grading (0,1,...,1):
    # g_0 = sl_2 + center, all screenings of degree one
    "sl3-subregular": ("sl", 3, {"a1": 0, "a2": 2}, ["a2"]),
    "sl4-subregular": ("sl", 4, {"a1": 0, "a2": 2, "a3": 2}, ["a2", "a3"]),
    # subregular nilpotent of sl_3 with the alternative good grading
    # (1/2, 1/2) for f = e_{-a1-a2}; g_0 = h, both screenings dressed
    "sl3-subregular-cartan": ("sl", 3, {"a1": 1, "a2": 1}, ["a1+a2"]),
}


def preset_names():
    return sorted(PRESETS)


def build_preset(name):
    """(datum, grading, base, levelform, chi) for a preset name."""
    try:
        kind, n, labels, support = PRESETS[name]
    except KeyError:
        raise KeyError("unknown preset %r (known: %s)"
                       % (name, ", ".join(preset_names())))
    datum = build_sl(n) if kind == "sl" else build_osp(n)
    grading = good_grading(datum, labels, support)
    base = restricted_base(grading)
    levelform = tau_form(datum, grading)
    chifun = chi(datum, grading)
    return datum, grading, base, levelform, chifun


def preset_context(name, level="symbolic"):
    """A ScreeningContext at symbolic level k or a rational specialization."""
    datum, grading, base, levelform, chifun = build_preset(name)
    if level == "symbolic":
        field = RationalFunctionField("k")
        lev = field.gen
    else:
        field = QQ
        lev = Fraction(level)
    return ScreeningContext(datum, grading, base, levelform, chifun,
                            field, lev)
