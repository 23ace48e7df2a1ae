"""Exact calculus of fields, normally ordered words and module states.

A generator system is a finite family of fields with parities, conformal
weights (stored doubled) and a bracket table
[a_lambda b] = sum_n (a_(n) b) lambda^n / n!  whose coefficients are linear
in the generators plus a central constant.  Everything else is derived from
mode actions on module states:

  * states are exact linear combinations of PBW monomials
    g1_(-n1) ... gr_(-nr) |hv>  with n_i >= 1, letters in a fixed order and
    odd letters never repeated;
  * the mode g_(m) of a generator acts by straightening, using
    [g_(m), h_(n)] = sum_j C(m, j) (g_(j) h)_(m+n-j);
  * the field of a state is read back from the PBW word, so normally
    ordered products, derivatives and lambda-brackets of composite fields
    are computed as coefficient extractions [z^J] (F(z) v) and converted
    back to canonical words.

Highest vectors carry momentum (Fock modules over the abelian current
part) or a finite zero-mode action table (induced modules); lattice
exponential operators act through their explicit mode series.  All states
are graded by depth above the highest vector, a doubled integer.
"""

from fractions import Fraction


class UnknownGenerator(KeyError):
    pass


class NonVacuumModule(ValueError):
    pass


class GradingMismatch(ValueError):
    pass


class UndefinedAction(ValueError):
    pass


class NonAbelianMomentum(ValueError):
    pass


class CriticalLevel(ZeroDivisionError):
    pass


def _binom(m, j):
    # generalized binomial C(m, j) for integer m (possibly negative), j >= 0
    num = 1
    for t in range(j):
        num *= (m - t)
    den = 1
    for t in range(2, j + 1):
        den *= t
    return Fraction(num, den)


def _ffact(s, d):
    out = 1
    for t in range(d):
        out *= (s - t)
    return out


class Gen:
    __slots__ = ("index", "name", "parity", "weight2", "charge", "current")

    def __init__(self, index, name, parity, weight2, charge, current):
        self.index = index
        self.name = name
        self.parity = parity
        self.weight2 = weight2
        self.charge = charge
        self.current = current

    def __repr__(self):
        return "Gen(%s)" % self.name


def comb(const=None, terms=()):
    """A linear combination: constant + sum coeff * d^(der) generator."""
    return (const, tuple(terms))


class GenSystem:
    """Finite generator family with an exact lambda-bracket table."""

    def __init__(self, field, label=""):
        self.field = field
        self.label = label
        self.gens = []
        self.by_name = {}
        self.brackets = {}
        self.currents = []
        self.current_pos = {}
        self.pairing = None
        self._module = None

    def add_gen(self, name, parity, weight2, charge=0, current=False):
        g = Gen(len(self.gens), name, parity, weight2, charge, current)
        self.gens.append(g)
        self.by_name[name] = g.index
        if current:
            self.current_pos[g.index] = len(self.currents)
            self.currents.append(g.index)
        return g.index

    def set_pairing(self, gram):
        """Bilinear form on the current span, used for momentum pairings."""
        self.pairing = gram

    def set_bracket(self, i, j, entries):
        """entries: {n: comb(...)}; the (j, i) table is filled by skew-symmetry."""
        entries = {n: lc for n, lc in entries.items() if not _comb_zero(lc, self.field)}
        self.brackets[(i, j)] = entries
        mirror = self._skew_entries(i, j, entries)
        if i == j:
            if not _entries_equal(entries, mirror, self.field):
                raise ValueError("bracket of %s with itself is not skew-consistent"
                                 % self.gens[i].name)
        else:
            if (j, i) in self.brackets and not _entries_equal(
                    self.brackets[(j, i)], mirror, self.field):
                raise ValueError("bracket table for (%s,%s) inconsistent with skew"
                                 % (self.gens[j].name, self.gens[i].name))
            self.brackets[(j, i)] = mirror

    def _skew_entries(self, i, j, entries):
        # [b_m a] = -(-1)^{p_i p_j} sum_{n>=m} (-1)^n / (n-m)! d^{n-m} (a_(n) b)
        field = self.field
        sign = (-1) ** (self.gens[i].parity * self.gens[j].parity)
        out = {}
        for m in range(0, (max(entries) + 1) if entries else 0):
            const_acc = field.zero
            term_acc = {}
            for n, (const, terms) in entries.items():
                if n < m:
                    continue
                e = n - m
                cf = field.lift(Fraction((-1) ** n, _fact(e)) * (-sign))
                if const is not None and e == 0:
                    const_acc = const_acc + cf * const
                for (g2, d, coeff) in terms:
                    key = (g2, d + e)
                    term_acc[key] = term_acc.get(key, field.zero) + cf * coeff
            terms = tuple((g2, d, c) for (g2, d), c in sorted(term_acc.items())
                          if not field.is_zero(c))
            lc = (None if field.is_zero(const_acc) else const_acc, terms)
            if not _comb_zero(lc, field):
                out[m] = lc
        return out

    def bracket_entry(self, i, j):
        return self.brackets.get((i, j), {})

    def module(self):
        if self._module is None:
            self._module = Module(self)
        return self._module

    def vacuum_tag(self):
        return ("m", (self.field.zero,) * len(self.currents))

    def momentum_tag(self, coords):
        coords = tuple(coords)
        if len(coords) != len(self.currents):
            raise NonAbelianMomentum("momentum must live in the current span")
        return ("m", coords)

    def pair_momenta(self, a, b):
        if self.pairing is None:
            raise NonAbelianMomentum("no pairing on the current span")
        acc = self.field.zero
        for i, x in enumerate(a):
            if not self.field.is_zero(x):
                for j, y in enumerate(b):
                    if not self.field.is_zero(y):
                        acc = acc + x * y * self.pairing[i][j]
        return acc

    def gen_field(self, name_or_index, d=0):
        g = name_or_index if isinstance(name_or_index, int) \
            else self.by_name[name_or_index]
        return FieldExpr(self, {(((g, d),), None): self.field.one})

    def one_field(self):
        return FieldExpr(self, {((), None): self.field.one})

    def exp_field(self, coords):
        """The lattice exponential e^{int mu} as a field."""
        tag = self.momentum_tag(coords)
        return FieldExpr(self, {((), tag[1]): self.field.one})


def _fact(n):
    out = 1
    for t in range(2, n + 1):
        out *= t
    return out


def _comb_zero(lc, field):
    const, terms = lc
    if const is not None and not field.is_zero(const):
        return False
    return all(field.is_zero(c) for (_, _, c) in terms)


def _entries_equal(a, b, field):
    keys = set(a) | set(b)
    for n in keys:
        ca, ta = a.get(n, (None, ()))
        cb, tb = b.get(n, (None, ()))
        ca = field.zero if ca is None else ca
        cb = field.zero if cb is None else cb
        if ca != cb:
            return False
        da = {(g, d): c for (g, d, c) in ta}
        db = {(g, d): c for (g, d, c) in tb}
        for key in set(da) | set(db):
            if da.get(key, field.zero) != db.get(key, field.zero):
                return False
    return True


class HighestVector:
    __slots__ = ("tag", "parity", "momentum", "zero_modes", "translate_state")

    def __init__(self, tag, parity=0, momentum=None, zero_modes=None,
                 translate_state=None):
        self.tag = tag
        self.parity = parity
        self.momentum = momentum          # coords over currents, or None
        self.zero_modes = zero_modes or {}  # gidx -> {tag2: coeff}
        self.translate_state = translate_state or {}


class Module:
    """All modules over one generator system share the straightening engine.

    Highest vectors are keyed by tags: ("m", coords) for Fock-type vectors
    over the current span (the vacuum is momentum zero) and ("x", key) for
    registered induced-module vectors with a finite zero-mode table.
    """

    def __init__(self, system):
        self.system = system
        self.field = system.field
        self.hvs = {}
        self._mode_memo = {}
        self._translate_memo = {}
        self._word_memo = {}

    # -- highest vectors -----------------------------------------------------

    def hv(self, tag):
        h = self.hvs.get(tag)
        if h is None:
            if tag[0] != "m":
                raise UndefinedAction("unregistered highest vector %r" % (tag,))
            coords = tag[1]
            sys = self.system
            zero = {}
            for g in sys.currents:
                val = self.field.zero
                row = sys.pairing[sys.current_pos[g]] if sys.pairing else None
                if row is not None:
                    for j, c in enumerate(coords):
                        if not self.field.is_zero(c):
                            val = val + row[j] * c
                if not self.field.is_zero(val):
                    zero[g] = {tag: val}
            translate = {}
            for j, c in enumerate(coords):
                if not self.field.is_zero(c):
                    g = sys.currents[j]
                    word = ((g, -1),)
                    translate[(word, tag)] = c
            h = HighestVector(tag, parity=0, momentum=coords,
                              zero_modes=zero, translate_state=translate)
            self.hvs[tag] = h
        return h

    def register_hv(self, key, parity=0, zero_modes=None, translate_state=None):
        tag = ("x", key)
        self.hvs[tag] = HighestVector(tag, parity=parity,
                                      zero_modes=zero_modes,
                                      translate_state=translate_state)
        return tag

    def vacuum_state(self):
        tag = self.system.vacuum_tag()
        self.hv(tag)
        return {((), tag): self.field.one}

    # -- gradings -------------------------------------------------------------

    def word_depth2(self, word):
        return sum(self.system.gens[g].weight2 - 2 * m - 2 for (g, m) in word)

    def word_parity(self, word):
        return sum(self.system.gens[g].parity for (g, m) in word) % 2

    def word_charge(self, word):
        return sum(self.system.gens[g].charge for (g, m) in word)

    def mono_parity(self, word, tag):
        return (self.word_parity(word) + self.hv(tag).parity) % 2

    def state_depth2(self, state):
        return max((self.word_depth2(w) for (w, t) in state), default=0)

    # -- mode action -----------------------------------------------------------

    def gen_mode(self, g, m, word, tag):
        key = (g, m, word, tag)
        out = self._mode_memo.get(key)
        if out is not None:
            return out
        field = self.field
        gens = self.system.gens
        if not word:
            if m >= 1:
                out = {}
            elif m == 0:
                zm = self.hv(tag).zero_modes.get(g, {})
                out = {((), t2): c for t2, c in zm.items()}
            else:
                out = {(((g, m),), tag): field.one}
        else:
            g1, m1 = word[0]
            if m <= -1 and (g, m) <= (g1, m1):
                if (g, m) == (g1, m1) and gens[g].parity:
                    out = {}
                else:
                    out = {(((g, m),) + word, tag): field.one}
            else:
                rest = word[1:]
                acc = {}
                entry = self.system.bracket_entry(g, g1)
                for j, lc in entry.items():
                    bj = _binom(m, j)
                    if bj:
                        part = self.comb_mode(lc, m + m1 - j, rest, tag)
                        _acc_state(acc, part, field.lift(bj), field)
                sign = (-1) ** (gens[g].parity * gens[g1].parity)
                inner = self.gen_mode(g, m, rest, tag)
                for (w2, t2), c in inner.items():
                    part = self.gen_mode(g1, m1, w2, t2)
                    cc = c if sign > 0 else -c
                    _acc_state(acc, part, cc, field)
                out = {k: v for k, v in acc.items() if not field.is_zero(v)}
        self._mode_memo[key] = out
        return out

    def comb_mode(self, lc, s, word, tag):
        field = self.field
        const, terms = lc
        acc = {}
        if const is not None and s == -1:
            acc[(word, tag)] = const
        for (g2, d, coeff) in terms:
            ff = _ffact(s, d)
            if ff == 0:
                continue
            c = coeff * field.lift(Fraction((-1) ** d * ff))
            part = self.gen_mode(g2, s - d, word, tag)
            _acc_state(acc, part, c, field)
        return {k: v for k, v in acc.items() if not field.is_zero(v)}

    def gen_mode_state(self, g, m, state):
        field = self.field
        acc = {}
        for (w, t), c in state.items():
            _acc_state(acc, self.gen_mode(g, m, w, t), c, field)
        return {k: v for k, v in acc.items() if not field.is_zero(v)}

    # -- translation -------------------------------------------------------------

    def translate_mono(self, word, tag):
        key = (word, tag)
        out = self._translate_memo.get(key)
        if out is not None:
            return out
        field = self.field
        if not word:
            out = dict(self.hv(tag).translate_state)
        else:
            g1, m1 = word[0]
            rest = word[1:]
            acc = {}
            part = self.gen_mode(g1, m1 - 1, rest, tag)
            _acc_state(acc, part, field.lift(Fraction(-m1)), field)
            inner = self.translate_mono(rest, tag)
            for (w2, t2), c in inner.items():
                _acc_state(acc, self.gen_mode(g1, m1, w2, t2), c, field)
            out = {k: v for k, v in acc.items() if not field.is_zero(v)}
        self._translate_memo[key] = out
        return out

    def translate(self, state):
        field = self.field
        acc = {}
        for (w, t), c in state.items():
            _acc_state(acc, self.translate_mono(w, t), c, field)
        return {k: v for k, v in acc.items() if not field.is_zero(v)}

    # -- coefficient extraction for normally ordered word fields ----------------

    def letter_mode(self, g, d, n, word, tag):
        ff = _ffact(n, d)
        if ff == 0:
            return {}
        sgn = Fraction((-1) ** d * ff)
        part = self.gen_mode(g, n - d, word, tag)
        if sgn == 1:
            return part
        c = self.field.lift(sgn)
        return {k: v * c for k, v in part.items()}

    def _mom_pairing_int(self, mom, tag):
        hv = self.hv(tag)
        if hv.momentum is None:
            raise GradingMismatch(
                "lattice exponential applied to a non-Fock highest vector")
        val = self.system.pair_momenta(mom, hv.momentum)
        fr = val.as_fraction() if hasattr(val, "as_fraction") else Fraction(val)
        if fr is None or fr.denominator != 1:
            raise GradingMismatch(
                "momentum pairing %s is not an integer" % val)
        return int(fr)

    def word_coeff_mono(self, word, mom, J, w0, tag):
        """[z^J] of the word field (with optional momentum factor) on a monomial."""
        key = (word, mom, J, w0, tag)
        out = self._word_memo.get(key)
        if out is not None:
            return out
        field = self.field
        if not word:
            if mom is None:
                out = {(w0, tag): field.one} if J == 0 else {}
            else:
                out = self.exp_coeff_mono(mom, J, w0, tag)
        else:
            g, d = word[0]
            rest = word[1:]
            gens = self.system.gens
            p_a = gens[g].parity
            p_rest = sum(gens[g2].parity for (g2, _) in rest) % 2
            D2 = self.word_depth2(w0)
            W2rest = sum(gens[g2].weight2 + 2 * dd for (g2, dd) in rest)
            P2 = 0
            if mom is not None:
                P2 = 2 * self._mom_pairing_int(mom, tag)
            acc = {}
            imax = (D2 + 2 * J + W2rest - P2) // 2
            for i in range(0, imax + 1):
                inner = self.word_coeff_mono(rest, mom, J - i, w0, tag)
                for (w2, t2), c in inner.items():
                    part = self.letter_mode(g, d, -i - 1, w2, t2)
                    _acc_state(acc, part, c, field)
            w2a = gens[g].weight2 + 2 * d
            imax2 = (D2 + w2a) // 2 - 1
            sign = (-1) ** (p_a * p_rest)
            for i in range(0, imax2 + 1):
                lower = self.letter_mode(g, d, i, w0, tag)
                for (w2, t2), c in lower.items():
                    part = self.word_coeff_mono(rest, mom, J + i + 1, w2, t2)
                    cc = c if sign > 0 else -c
                    _acc_state(acc, part, cc, field)
            out = {k: v for k, v in acc.items() if not field.is_zero(v)}
        self._word_memo[key] = out
        return out

    def exp_coeff_mono(self, mom, J, w0, tag):
        """[z^J] of e^{int mu}(z) acting on a monomial of a Fock module."""
        field = self.field
        sys = self.system
        p_int = self._mom_pairing_int(mom, tag)
        hv = self.hv(tag)
        new_coords = tuple(a + b for a, b in zip(hv.momentum, mom))
        new_tag = sys.momentum_tag(new_coords)
        self.hv(new_tag)
        D2 = self.word_depth2(w0)
        out = {}
        for bsum in range(0, D2 // 2 + 1):
            asum = J - p_int + bsum
            if asum < 0:
                continue
            for bpart in _partition_mults(bsum):
                st = {(w0, tag): field.one}
                coeff = Fraction(1)
                for n, mult in bpart.items():
                    coeff *= Fraction((-1) ** mult, n ** mult * _fact(mult))
                    for _ in range(mult):
                        st = self.mom_mode(mom, n, st)
                        if not st:
                            break
                    if not st:
                        break
                if not st:
                    continue
                # shift operator: retag the highest vector
                st = {(w, new_tag): c for (w, t), c in st.items()}
                for apart in _partition_mults(asum):
                    st2 = st
                    c2 = coeff
                    for n, mult in apart.items():
                        c2 *= Fraction(1, n ** mult * _fact(mult))
                        for _ in range(mult):
                            st2 = self.mom_mode(mom, -n, st2)
                    _acc_state(out, st2, field.lift(c2), field)
        return {k: v for k, v in out.items() if not field.is_zero(v)}

    def mom_mode(self, mom, n, state):
        field = self.field
        acc = {}
        for j, c in enumerate(mom):
            if not field.is_zero(c):
                g = self.system.currents[j]
                part = self.gen_mode_state(g, n, state)
                _acc_state(acc, part, c, field)
        return {k: v for k, v in acc.items() if not field.is_zero(v)}

    def word_coeff_state(self, word, mom, J, state):
        field = self.field
        acc = {}
        for (w, t), c in state.items():
            _acc_state(acc, self.word_coeff_mono(word, mom, J, w, t), c, field)
        return {k: v for k, v in acc.items() if not field.is_zero(v)}


def _acc_state(acc, part, coeff, field):
    if field.is_zero(coeff):
        return
    for key, c in part.items():
        cur = acc.get(key)
        acc[key] = c * coeff if cur is None else cur + c * coeff


def _partition_mults(total):
    """All multiplicity dicts {part: mult} with sum part*mult == total."""
    out = []

    def rec(remaining, max_part, current):
        if remaining == 0:
            out.append(dict(current))
            return
        for part in range(min(max_part, remaining), 0, -1):
            for mult in range(remaining // part, 0, -1):
                current[part] = mult
                rec(remaining - part * mult, part - 1, current)
                del current[part]

    rec(total, total, {})
    return out


# ---------------------------------------------------------------------------
# state <-> field


def state_add(a, b, field):
    out = dict(a)
    for k, c in b.items():
        cur = out.get(k)
        out[k] = c if cur is None else cur + c
    return {k: v for k, v in out.items() if not field.is_zero(v)}


def state_scale(a, c, field):
    if field.is_zero(c):
        return {}
    return {k: v * c for k, v in a.items()}


class FieldExpr:
    """Sum of canonical normally ordered words, optionally with a lattice
    exponential factor; equality is equality of canonical forms."""

    __slots__ = ("system", "terms")

    def __init__(self, system, terms=None):
        self.system = system
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if not system.field.is_zero(c):
                    self.terms[k] = c

    # -- ring-ish operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, FieldExpr):
            if other.system is not self.system:
                raise UnknownGenerator("mixing fields from different systems")
            out = dict(self.terms)
            for k, c in other.terms.items():
                cur = out.get(k)
                out[k] = c if cur is None else cur + c
            return FieldExpr(self.system, out)
        return NotImplemented

    def __sub__(self, other):
        return self + other.scale(self.system.field.lift(Fraction(-1)))

    def __neg__(self):
        return self.scale(self.system.field.lift(Fraction(-1)))

    def scale(self, c):
        return FieldExpr(self.system,
                         {k: v * c for k, v in self.terms.items()})

    def scale_fraction(self, fr):
        return self.scale(self.system.field.lift(Fraction(fr)))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FieldExpr) or other.system is not self.system:
            return NotImplemented
        f = self.system.field
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, f.zero) == other.terms.get(k, f.zero)
                   for k in keys)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure ---------------------------------------------------------------

    def parity(self):
        pars = {sum(self.system.gens[g].parity for (g, _) in word) % 2
                for (word, mom) in self.terms}
        if len(pars) > 1:
            raise ValueError("field expression is not parity homogeneous")
        return pars.pop() if pars else 0

    def letter_weight2(self):
        return max((sum(self.system.gens[g].weight2 + 2 * d for (g, d) in w)
                    for (w, mom) in self.terms), default=0)

    def charge(self):
        out = {sum(self.system.gens[g].charge for (g, _) in w)
               for (w, mom) in self.terms}
        if len(out) > 1:
            raise ValueError("field expression is not charge homogeneous")
        return out.pop() if out else 0

    def __str__(self):
        if not self.terms:
            return "0"
        sys = self.system
        bits = []
        for (word, mom), c in sorted(self.terms.items(),
                                     key=lambda kv: _term_sort_key(kv[0])):
            letters = []
            for (g, d) in word:
                nm = sys.gens[g].name
                letters.append(nm if d == 0 else "d^%d %s" % (d, nm)
                               if d > 1 else "d %s" % nm)
            if mom is not None:
                letters.append("e^{%s}" % ",".join(sys.field.to_str(x)
                                                   for x in mom))
            body = ":" + " ".join(letters) + ":" if len(letters) > 1 else \
                (letters[0] if letters else "1")
            bits.append("(%s)*%s" % (sys.field.to_str(c), body))
        return " + ".join(bits)

    __repr__ = __str__


def _term_sort_key(key):
    word, mom = key
    return (word, () if mom is None else tuple(str(x) for x in mom))


def field_state(fe, module=None):
    """The state A_(-1)...|0> (or |mu> for a momentum factor) of a field."""
    module = module or fe.system.module()
    field = module.field
    out = {}
    for (word, mom), c in fe.terms.items():
        tag = module.system.momentum_tag(mom) if mom is not None \
            else module.system.vacuum_tag()
        module.hv(tag)
        st = {((), tag): c}
        for (g, d) in reversed(word):
            scale = field.lift(Fraction(_fact(d)))
            nxt = {}
            for (w, t), cc in st.items():
                _acc_state(nxt, module.gen_mode(g, -d - 1, w, t), cc * scale,
                           field)
            st = nxt
        for k, v in st.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
    return {k: v for k, v in out.items() if not field.is_zero(v)}


def state_field(state, system):
    """Inverse of field_state on Fock-type states (canonical words)."""
    field = system.field
    terms = {}
    zero_coords = (field.zero,) * len(system.currents)
    for (word, tag), c in state.items():
        if tag[0] != "m":
            raise NonVacuumModule(
                "state over %r has no field counterpart" % (tag,))
        mom = None if tag[1] == zero_coords else tag[1]
        fword = tuple((g, -m - 1) for (g, m) in word)
        scale = Fraction(1)
        for (g, m) in word:
            scale /= _fact(-m - 1)
        key = (fword, mom)
        val = c * field.lift(scale)
        cur = terms.get(key)
        terms[key] = val if cur is None else cur + val
    return FieldExpr(system, terms)


# ---------------------------------------------------------------------------
# derived operations


def apply_field_coeff(fe, J, state, module=None):
    """[z^J] (F(z) state) for a field expression F."""
    module = module or fe.system.module()
    field = module.field
    acc = {}
    for (word, mom), c in fe.terms.items():
        part = module.word_coeff_state(word, mom, J, state)
        _acc_state(acc, part, c, field)
    return {k: v for k, v in acc.items() if not field.is_zero(v)}


def mode_apply(fe, n2, state, module=None):
    """Physical mode A_{n} (doubled index n2) applied to a state.

    For a field of doubled weight w2 the physical index m (with
    A(z) = sum_m A_m z^{-m-w}) relates to the integer mode index by
    A_m = A_(m + w - 1); n2 + w2 must be even.
    """
    module = module or fe.system.module()
    weights = {sum(fe.system.gens[g].weight2 + 2 * d for (g, d) in word)
               for (word, mom) in fe.terms}
    for (word, mom) in fe.terms:
        if mom is not None:
            raise UndefinedAction(
                "physical mode indexing needs a pure letter weight")
    if len(weights) > 1:
        raise GradingMismatch("physical mode of an inhomogeneous field")
    w2 = weights.pop() if weights else 0
    if (n2 + w2) % 2:
        raise GradingMismatch("mode index %s/2 incompatible with weight %s/2"
                              % (n2, w2))
    n = (n2 + w2) // 2 - 1
    return apply_field_coeff(fe, -n - 1, state, module)


def bracket(a, b, module=None):
    """[a_lambda b] as {n: field of (a_(n) b)}; lambda-poly coefficients
    carry the 1/n! normalization implicitly (entry n is a_(n) b)."""
    module = module or a.system.module()
    if a.system is not b.system:
        raise UnknownGenerator("bracket of fields over different systems")
    field = module.field
    bstate = field_state(b, module)
    if not bstate:
        return {}
    depth_b = module.state_depth2(bstate)
    out = {}
    for (word, mom), c in a.terms.items():
        w2a = sum(a.system.gens[g].weight2 + 2 * d for (g, d) in word)
        # a_(n) b vanishes once the target depth would go negative; the
        # momentum pairing shifts the cutoff for lattice factors
        nmax = (depth_b + w2a) // 2 - _mom_bound(a.system, mom, bstate, module)
        for n in range(0, nmax + 1):
            part = module.word_coeff_state(word, mom, -n - 1, bstate)
            if part:
                cur = out.get(n)
                st = state_scale(part, c, field)
                out[n] = st if cur is None else state_add(cur, st, field)
    return {n: state_field(st, a.system) for n, st in out.items()
            if any(not field.is_zero(v) for v in st.values())}


def _mom_bound(system, mom, bstate, module):
    if mom is None:
        return 0
    worst = 0
    for (w, t) in bstate:
        p = module._mom_pairing_int(mom, t)
        worst = min(worst, p)
    return worst


def normal_order(a, b, module=None):
    """The normally ordered product :ab: in canonical form."""
    module = module or a.system.module()
    st = apply_field_coeff(a, 0, field_state(b, module), module)
    return state_field(st, a.system)


def normal_order_list(factors, module=None):
    out = factors[-1]
    for f in reversed(factors[:-1]):
        out = normal_order(f, out, module)
    return out


def derive(a, module=None):
    module = module or a.system.module()
    return state_field(module.translate(field_state(a, module)), a.system)


def derive_n(a, n, module=None):
    for _ in range(n):
        a = derive(a, module)
    return a


def lambda_shift_skew(lp, pa, pb, system, module=None):
    """Apply skew-symmetry: from [a_lambda b] compute [b_lambda a]."""
    field = system.field
    out = {}
    nmax = max(lp) if lp else -1
    for m in range(0, nmax + 1):
        acc = None
        for n in range(m, nmax + 1):
            if n not in lp:
                continue
            c = Fraction((-1) ** n, _fact(n - m)) * (-(-1) ** (pa * pb))
            term = derive_n(lp[n], n - m, module).scale(field.lift(c))
            acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero():
            out[m] = acc
    return out


def graded_basis(module, weight2, hv_tags=None, charge=None, parity=None):
    """Deterministic PBW basis of the given doubled weight (depth).

    Returns a list of (word, tag) pairs in lexicographic order of
    (tag, word); odd generators never repeat a mode.
    """
    sys = module.system
    if hv_tags is None:
        hv_tags = [sys.vacuum_tag()]
    gens = sys.gens

    def per_gen(gidx, budget2):
        """All sorted letter tuples for one generator, with their depth."""
        g = gens[gidx]
        results = []

        def rec(start_mode, rem, acc):
            results.append((tuple(sorted(acc)), budget2 - rem))
            m = start_mode
            while True:
                cost = g.weight2 - 2 * m - 2
                if cost > rem:
                    break
                acc.append((gidx, m))
                rec(m - 1 if g.parity else m, rem - cost, acc)
                acc.pop()
                m -= 1

        rec(-1, budget2, [])
        return results

    out_words = []

    def build(gidx, rem2, acc):
        if gidx == len(gens):
            if rem2 == 0:
                out_words.append(tuple(acc))
            return
        for letters, used in per_gen(gidx, rem2):
            acc.extend(letters)
            build(gidx + 1, rem2 - used, acc)
            del acc[len(acc) - len(letters):]

    basis = []
    for tag in sorted(hv_tags, key=str):
        module.hv(tag)
        out_words = []
        build(0, weight2, [])
        for w in sorted(out_words):
            if charge is not None and module.word_charge(w) != charge:
                continue
            if parity is not None and module.mono_parity(w, tag) != parity:
                continue
            basis.append((w, tag))
    return basis


def sugawara_field(system, dual_pairs, denom):
    """(1/denom) * sum_i :J^{u^i} J^{u_i}: for given dual pairs of fields."""
    acc = None
    for a, b in dual_pairs:
        term = normal_order(a, b)
        acc = term if acc is None else acc + term
    if acc is None:
        raise ValueError("empty Sugawara sum")
    return acc.scale(system.field.one / denom)
