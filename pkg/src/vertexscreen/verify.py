"""Named verification suites over seeded random samples.

All randomness is drawn from a caller-supplied ``random.Random`` so every
run is reproducible from its seed.  Each suite returns a JSON-ready dict
with "status": "pass"/"fail" and a first-failure witness when applicable.
"""

from fractions import Fraction

from .linalg import solve_in_span
from .presets import build_preset, preset_context
from .scalars import RationalFunctionField
from .screening import exponential_screenings, expected_character, kernel_basis
from .serialize import field_to_json
from .vertexcalc import (
    FieldExpr, apply_field_coeff, bracket, derive, field_state, graded_basis,
    lambda_shift_skew, normal_order, state_field, state_add, state_scale,
    _binom, _fact,
)
from .walgebras import (WakimotoMap, build_complex, build_w2n, build_wbn,
                        miura_project, verify_fs, verify_wbn_screening)


# ---------------------------------------------------------------------------
# sampling


def random_homogeneous_field(module, rng, weight2, parity=None):
    """A random parity-homogeneous field of the given doubled weight."""
    sys = module.system
    cands = [key for key in graded_basis(module, weight2)
             if parity is None or module.mono_parity(*key) == parity]
    if parity is None and cands:
        want = module.mono_parity(*cands[rng.randrange(len(cands))])
        cands = [key for key in cands if module.mono_parity(*key) == want]
    if not cands:
        return None
    nterms = min(len(cands), 1 + rng.randrange(2))
    st = {}
    for key in rng.sample(cands, nterms):
        st[key] = sys.field.lift(Fraction(rng.randint(1, 3) *
                                          rng.choice((1, -1))))
    return state_field(st, sys)


def _sample_triple(module, rng, wmax2):
    out = []
    for _ in range(3):
        for _ in range(8):
            w2 = 1 + rng.randrange(wmax2)
            fe = random_homogeneous_field(module, rng, w2)
            if fe is not None and not fe.is_zero():
                out.append(fe)
                break
        else:
            return None
    return out


# ---------------------------------------------------------------------------
# the four bracket axioms


def check_skew(a, b, module):
    lp = bracket(a, b, module)
    direct = bracket(b, a, module)
    want = lambda_shift_skew(lp, a.parity(), b.parity(), a.system, module)
    keys = set(direct) | set(want)
    zero = FieldExpr(a.system, {})
    for n in keys:
        if direct.get(n, zero) != want.get(n, zero):
            return False
    return True


def _double_left(a, b, c, module):
    """{(i, j): field} with   [a_l [b_m c]] = sum F_ij l^i m^j."""
    inner = bracket(b, c, module)
    out = {}
    for j, cj in inner.items():
        outer = bracket(a, cj, module)
        for i, f in outer.items():
            coeff = Fraction(1, _fact(i) * _fact(j))
            key = (i, j)
            term = f.scale(a.system.field.lift(coeff))
            out[key] = out[key] + term if key in out else term
    return out


def _jacobi_rhs(a, b, c, module):
    """{(i, j): field} for [[a_l b]_{l+m} c]."""
    first = bracket(a, b, module)
    out = {}
    field = a.system.field
    for n, fn in first.items():
        second = bracket(fn, c, module)
        for j, f in second.items():
            for t in range(j + 1):
                coeff = Fraction(_binom(j, t), _fact(n) * _fact(j))
                key = (n + t, j - t)
                term = f.scale(field.lift(coeff))
                out[key] = out[key] + term if key in out else term
    return out


def check_jacobi(a, b, c, module):
    field = a.system.field
    lhs = _double_left(a, b, c, module)
    swapped = _double_left(b, a, c, module)
    sign = (-1) ** (a.parity() * b.parity())
    for (i, j), f in swapped.items():
        term = f.scale(field.lift(-sign))
        key = (j, i)
        lhs[key] = lhs[key] + term if key in lhs else term
    rhs = _jacobi_rhs(a, b, c, module)
    zero = FieldExpr(a.system, {})
    keys = set(lhs) | set(rhs)
    return all(lhs.get(k, zero) == rhs.get(k, zero) for k in keys)


def check_wick(a, b, c, module):
    """[a_l :bc:] = :[a_l b]c: + (-1)^{p(a)p(b)} :b [a_l c]: + integral term."""
    field = a.system.field
    zero = FieldExpr(a.system, {})
    lhs = bracket(a, normal_order(b, c, module), module)
    ab = bracket(a, b, module)
    ac = bracket(a, c, module)
    sign = (-1) ** (a.parity() * b.parity())
    rhs = {}
    for n, f in ab.items():
        rhs[n] = normal_order(f, c, module)
    for n, f in ac.items():
        term = normal_order(b, f, module).scale(field.lift(sign))
        rhs[n] = rhs[n] + term if n in rhs else term
    # integral_0^l [[a_l b]_m c] dm  =  sum_{n,j} X_nj l^{n+j+1} / (n! j! (j+1))
    for n, fn in ab.items():
        second = bracket(fn, c, module)
        for j, f in second.items():
            m = n + j + 1
            coeff = Fraction(_fact(m), _fact(n) * _fact(j) * (j + 1))
            term = f.scale(field.lift(coeff))
            rhs[m] = rhs[m] + term if m in rhs else term
    keys = set(lhs) | set(rhs)
    return all(lhs.get(k, zero) == rhs.get(k, zero)
               for k in keys if not (k in rhs and rhs[k].is_zero()
                                     and k not in lhs))


def check_commutator(a, b, v, m, n, module):
    """[a_(m), b_(n)] v = sum_j C(m, j) (a_(j) b)_(m+n-j) v."""
    field = a.system.field
    av = apply_field_coeff(b, -n - 1, v, module)
    lhs = apply_field_coeff(a, -m - 1, av, module)
    bv = apply_field_coeff(a, -m - 1, v, module)
    sign = (-1) ** (a.parity() * b.parity())
    lhs = state_add(lhs, state_scale(
        apply_field_coeff(b, -n - 1, bv, module), field.lift(-sign), field),
        field)
    rhs = {}
    ab = bracket(a, b, module)
    for j, f in ab.items():
        bj = _binom(m, j)
        if bj:
            part = apply_field_coeff(f, -(m + n - j) - 1, v, module)
            rhs = state_add(rhs, state_scale(part, field.lift(bj), field),
                            field)
    return lhs == rhs


WICK_PRESETS = ("sl2-regular", "osp1_2-regular", "osp1_4-regular",
                "sl3-subregular", "sl3-subregular-cartan")


def verify_wick(args, rng):
    """Bracket-axiom suite on seeded random composite fields."""
    trials = getattr(args, "trials", 25)
    wmax2 = min(getattr(args, "max_weight", 6), 6)
    total = 0
    failures = []
    per_preset = {}
    for preset in WICK_PRESETS:
        ctx = preset_context(preset)
        module = ctx.module
        count = 0
        for t in range(trials):
            triple = _sample_triple(module, rng, wmax2)
            if triple is None:
                continue
            a, b, c = triple
            count += 3
            ok = check_skew(a, b, module) and \
                check_jacobi(a, b, c, module) and \
                check_wick(a, b, c, module)
            if ok:
                v = {key: ctx.field.one
                     for key in graded_basis(module, rng.randrange(0, 5))}
                m, n = rng.randint(-2, 2), rng.randint(-2, 2)
                ok = check_commutator(a, b, v, m, n, module)
            if not ok:
                failures.append({"preset": preset, "trial": t,
                                 "a": field_to_json(a), "b": field_to_json(b),
                                 "c": field_to_json(c)})
                break
        per_preset[preset] = count
        total += count
    return {
        "status": "pass" if not failures else "fail",
        "fields_sampled": total,
        "per_preset": per_preset,
        "weights_tested": list(range(1, wmax2 + 1)),
        "witness": failures[:1],
    }


def verify_brst(args, rng):
    preset = args.preset or "sl2-regular"
    maxw2 = min(args.max_weight, 8)
    datum, grading, base, lf, ch = build_preset(preset)
    field = RationalFunctionField("k")
    level = field.gen if args.level == "symbolic" else Fraction(args.level)
    if args.level != "symbolic":
        from .scalars import QQ
        field = QQ
    brst = build_complex(datum, grading, lf, ch, field, level)
    witness = []
    # d0 squares to zero on every monomial
    for w2 in range(0, maxw2 + 1):
        for key in graded_basis(brst.module, w2):
            dd = brst.d0_state(brst.d0_state({key: field.one}))
            if dd:
                witness.append({"check": "d0^2", "weight2": w2})
                break
    dims = brst.cohomology_dims(maxw2)
    char = expected_character(datum, grading, maxw2)
    h0 = [dims.get((w2, 0), 0) for w2 in range(0, maxw2 + 1)]
    expect = [char[w2] for w2 in range(0, maxw2 + 1)]
    nonzero = {str(kk): v for kk, v in dims.items() if kk[1] != 0 and v != 0}
    if h0 != expect:
        witness.append({"check": "H0 vs character", "got": h0,
                        "want": expect})
    if nonzero:
        witness.append({"check": "H^(n!=0) = 0", "got": nonzero})
    return {
        "status": "pass" if not witness else "fail",
        "preset": preset,
        "h0_dims": h0,
        "character": expect,
        "weights_tested": list(range(0, maxw2 + 1)),
        "witness": witness,
    }


def verify_wbn(args, rng):
    n = args.n
    witness = []
    model = build_wbn(n)
    bad = model.check_c2_congruences()
    if bad:
        witness.append({"check": "c2-congruence",
                        "which": [b[0] for b in bad]})
    _, fails = verify_wbn_screening(n)
    if fails:
        witness.append({"check": "screening", "first": str(fails[0][0])})
    if n == 1:
        got = model.brackets
        want0 = (normal_order(model.system.gen_field(model.bgen[0]),
                              model.system.gen_field(model.bgen[0]),
                              model.module) +
                 derive(model.system.gen_field(model.bgen[0]),
                        model.module).scale(model.gamma) +
                 normal_order(derive(model.system.gen_field(model.psi),
                                     model.module),
                              model.system.gen_field(model.psi),
                              model.module))
        if got.get(0) != want0:
            witness.append({"check": "n=1 closed form"})
    return {
        "status": "pass" if not witness else "fail",
        "n": n,
        "top_coefficient": model.field.to_str(model.gamma_consts[n]),
        "witness": witness,
    }


def verify_fs_suite(args, rng):
    witness = []
    for n in (2, args.n) if args.n != 2 else (2,):
        model = build_w2n(n)
        if model.rewritten_f() != model.F:
            witness.append({"check": "F forms agree", "n": n})
        fails = verify_fs(model)
        if fails:
            witness.append({"check": "screening", "n": n,
                            "first": fails[0][0] + "." + fails[0][1]})
    return {"status": "pass" if not witness else "fail",
            "n": args.n, "witness": witness}


def verify_wakimoto(args, rng):
    n = max(args.n, 3)
    preset = "sl%d-subregular" % n
    datum, grading, base, lf, ch = build_preset(preset)
    wm = WakimotoMap(n, datum, grading, lf)
    checked, fails = wm.verify_brackets()
    return {
        "status": "pass" if not fails else "fail",
        "n": n,
        "pairs_checked": checked,
        "witness": [{"pair": f[0]} for f in fails[:1]],
    }


def verify_miura(args, rng):
    preset = args.preset or "sl2-regular"
    maxw2 = min(args.max_weight, 8)
    field = RationalFunctionField("k")
    datum, grading, base, lf, ch = build_preset(preset)
    brst = build_complex(datum, grading, lf, ch, field, field.gen)
    ctx = preset_context(preset)
    ops = exponential_screenings(ctx)
    char = expected_character(datum, grading, maxw2)
    witness = []
    scalars = {}
    for w2 in range(0, maxw2 + 1):
        h0 = brst.h0_basis(w2)
        rep = kernel_basis(ctx, ops, w2, expected=char[w2])
        if len(h0) != rep.kernel_dim:
            witness.append({"check": "dim", "weight2": w2})
            continue
        kvecs = [field_state(f, ctx.module) for f in rep.basis_fields]
        for cls in h0:
            img = miura_project(brst, cls, ctx)
            sol = solve_in_span(kvecs, img, field)
            if sol is None:
                witness.append({"check": "membership", "weight2": w2})
            elif len(kvecs) == 1:
                scalars[str(w2)] = field.to_str(sol[0])
    return {
        "status": "pass" if not witness else "fail",
        "preset": preset,
        "scalars_vs_kernel_basis": scalars,
        "weights_tested": list(range(0, maxw2 + 1)),
        "witness": witness,
    }
