"""Fixed-precision arithmetic in Kummer towers over Q_p, tame symbols, and
Herbrand functions.

A tower is O = W[phi]/(phi^e - p*u0) with W the (possibly quadratic) unramified
ring; elements are kept in capped-relative form phi^shift * unit with a unit
part of tracked relative precision (in phi-digits).  Operations fail loudly
when precision runs out instead of guessing digits.

Wildly ramified stages never get element arithmetic here; they enter only
through their piecewise-linear Herbrand data (PLFunc).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    DivisionByNonUnitBeyondPrecision,
    IndistinguishableFromZero,
    NonMonotone,
    PrecisionExhausted,
    RootOfUnityUnavailable,
    SquareDiscriminant,
    UnsupportedDegree,
    WrongField,
)
from .residue import is_prime, make_field

DEFAULT_PREC = 6
_STORE_MARGIN = 8


class TowerSpec:
    """O = W[phi]/(phi^e - p*u0), W unramified of degree f, digits mod p^prec."""

    def __init__(self, p, e=1, u0=1, prec=DEFAULT_PREC, f=1):
        if not is_prime(p) or p == 2:
            raise WrongField("residue characteristic must be an odd prime")
        if f not in (1, 2):
            raise UnsupportedDegree("unramified degree must be 1 or 2")
        # Eisenstein-extension arithmetic is uniform in e (wild included);
        # only the root-of-unity and symbol helpers carry tameness demands
        if prec < 2:
            raise PrecisionExhausted("need at least 2 digits of precision")
        self.p = p
        self.e = e
        self.f = f
        self.prec = prec
        self.store = p ** (prec + _STORE_MARGIN)
        self.residue_field = make_field(p, f)
        self.eps_int = self.residue_field._base_nonsquare
        self.u0 = self._coerce_coeff(u0)
        if self._cvalp(self.u0) != 0:
            raise WrongField("the Kummer unit u0 must be a unit")
        self.rprec_cap = e * prec

    # coefficient-ring helpers (ints for f=1, pairs a+b*s for f=2) ----------

    def _coerce_coeff(self, c):
        if self.f == 1:
            if isinstance(c, int):
                return c % self.store
            raise TypeError(f"bad coefficient {c!r}")
        if isinstance(c, int):
            return (c % self.store, 0)
        a, b = c
        return (a % self.store, b % self.store)

    def _czero(self):
        return 0 if self.f == 1 else (0, 0)

    def _cadd(self, x, y):
        if self.f == 1:
            return (x + y) % self.store
        return ((x[0] + y[0]) % self.store, (x[1] + y[1]) % self.store)

    def _cneg(self, x):
        if self.f == 1:
            return (-x) % self.store
        return ((-x[0]) % self.store, (-x[1]) % self.store)

    def _cmul(self, x, y):
        if self.f == 1:
            return (x * y) % self.store
        a = (x[0] * y[0] + self.eps_int * x[1] * y[1]) % self.store
        b = (x[0] * y[1] + x[1] * y[0]) % self.store
        return (a, b)

    def _cvalp(self, x):
        """p-valuation of a coefficient, capped at prec + margin."""
        cap = self.prec + _STORE_MARGIN
        vals = []
        comps = (x,) if self.f == 1 else x
        for c in comps:
            if c == 0:
                vals.append(cap)
                continue
            v = 0
            while c % self.p == 0 and v < cap:
                c //= self.p
                v += 1
            vals.append(v)
        return min(vals)

    def _cdivp(self, x):
        if self.f == 1:
            return x // self.p
        return (x[0] // self.p, x[1] // self.p)

    def _cinv(self, x):
        """Inverse of a unit coefficient mod p^(prec+margin)."""
        if self.f == 1:
            return pow(x, -1, self.store)
        a, b = x
        nr = (a * a - self.eps_int * b * b) % self.store
        nr_inv = pow(nr, -1, self.store)
        return ((a * nr_inv) % self.store, (-b * nr_inv) % self.store)

    def _cres(self, x):
        k = self.residue_field
        if self.f == 1:
            return k.elem(x % self.p)
        return k.elem(x[0] % self.p, x[1] % self.p)

    # element constructors ---------------------------------------------------

    def zero(self, absprec=None):
        if absprec is None:
            absprec = self.rprec_cap
        return LocalElem(self, absprec, None, 0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        return self.from_coeffs([n] + [0] * (self.e - 1))

    def from_residue(self, x):
        """Naive integer lift of a residue-field element."""
        if hasattr(x, "a"):
            c = x.a if self.f == 1 else (x.a, x.b)
        else:
            c = x
        return self.from_coeffs([c] + [0] * (self.e - 1))

    def from_coeffs(self, coeffs):
        """Element sum(coeffs[i] * phi^i), exact input."""
        cs = [self._coerce_coeff(c) for c in coeffs]
        if len(cs) != self.e:
            raise ValueError(f"need exactly {self.e} coefficients")
        return _make(self, 0, cs, self.rprec_cap)

    def phi(self, k=1):
        x = self.from_int(1)
        return LocalElem(self, x.shift + k, x.unit, x.rprec)

    def pi(self):
        """The base uniformizer p as a tower element."""
        return self.from_int(self.p)

    def zeta(self, m):
        """Primitive m-th root of unity, Hensel-lifted; needs m | p - 1."""
        if self.f != 1:
            raise RootOfUnityUnavailable("roots of unity lift only over Q_p")
        if (self.p - 1) % m != 0:
            raise RootOfUnityUnavailable(f"no primitive {m}-th root: p={self.p}")
        g = self.residue_field.gen.a
        x = pow(g, (self.p - 1) // m, self.p)
        mod = self.p
        while mod < self.store:
            mod = min(mod * mod, self.store)
            fx = (pow(x, m, mod) - 1) % mod
            dfx = (m * pow(x, m - 1, mod)) % mod
            x = (x - fx * pow(dfx, -1, mod)) % mod
        return self.from_int(x)

    def __repr__(self):
        return f"TowerSpec(p={self.p}, e={self.e}, u0=.., prec={self.prec}, f={self.f})"


def _poly_valuation(tower, coeffs):
    """phi-valuation of sum(c_i phi^i): min_i (i + e * val_p(c_i))."""
    e = tower.e
    best = None
    for i, c in enumerate(coeffs):
        v = i + e * tower._cvalp(c)
        if best is None or v < best:
            best = v
    return best


def _poly_mul(tower, a, b):
    e = tower.e
    out = [tower._czero()] * e
    for i, ca in enumerate(a):
        if ca == 0 or ca == (0, 0):
            continue
        for j, cb in enumerate(b):
            prod = tower._cmul(ca, cb)
            k = i + j
            if k >= e:
                prod = tower._cmul(prod, tower._cmul(tower._coerce_coeff(tower.p), tower.u0))
                k -= e
            out[k] = tower._cadd(out[k], prod)
    return out


def _poly_shift_up(tower, coeffs, t):
    """Multiply by phi^t inside the quotient ring (exact)."""
    out = list(coeffs)
    pu0 = tower._cmul(tower._coerce_coeff(tower.p), tower.u0)
    for _ in range(t):
        top = out[-1]
        out = [tower._cmul(top, pu0)] + out[:-1]
    return out


def _poly_shift_down(tower, coeffs, t):
    """Divide by phi^t; requires divisibility of the wrapped coefficients."""
    out = list(coeffs)
    u0_inv = tower._cinv(tower.u0)
    for _ in range(t):
        c0 = out[0]
        if tower._cvalp(c0) < 1:
            raise DivisionByNonUnitBeyondPrecision("unit constant term under phi-division")
        wrapped = tower._cmul(tower._cdivp(c0), u0_inv)
        out = out[1:] + [wrapped]
    return out


def _make(tower, shift, coeffs, rprec):
    """Normalize (shift, coeffs) so the unit part has phi-valuation zero."""
    rprec = min(rprec, tower.rprec_cap)
    if rprec <= 0:
        return LocalElem(tower, shift + rprec, None, 0)
    t = _poly_valuation(tower, coeffs)
    if t is None or t >= rprec:
        return LocalElem(tower, shift + rprec, None, 0)
    coeffs = _poly_shift_down(tower, coeffs, t)
    return LocalElem(tower, shift + t, coeffs, rprec - t)


class LocalElem:
    """phi^shift * unit, with the unit known to rprec phi-digits.

    A None unit means the element is indistinguishable from zero at absolute
    precision phi^shift.
    """

    __slots__ = ("tower", "shift", "unit", "rprec")

    def __init__(self, tower, shift, unit, rprec):
        self.tower = tower
        self.shift = shift
        self.unit = unit
        self.rprec = rprec

    def is_zero(self):
        return self.unit is None

    def valuation(self) -> Fraction:
        """Valuation normalized so val(p) = 1."""
        if self.is_zero():
            raise IndistinguishableFromZero(
                f"zero to absolute precision phi^{self.shift}"
            )
        return Fraction(self.shift, self.tower.e)

    def phi_valuation(self) -> int:
        if self.is_zero():
            raise IndistinguishableFromZero(
                f"zero to absolute precision phi^{self.shift}"
            )
        return self.shift

    def abs_prec(self) -> int:
        return self.shift + (self.rprec if self.unit is not None else 0)

    def leading_unit(self):
        """Residue of the valuation-zero unit part."""
        if self.is_zero():
            raise IndistinguishableFromZero("no leading unit of zero")
        return self.tower._cres(self.unit[0])

    def residue_coeff(self, i, digits=1):
        """Integer data of unit coefficient i mod p^digits (f = 1 only)."""
        if self.is_zero():
            return 0
        return self.unit[i] % self.tower.p**digits

    def _check(self, other):
        if not isinstance(other, LocalElem):
            if isinstance(other, int):
                return self.tower.from_int(other)
            raise TypeError(f"cannot combine with {other!r}")
        if other.tower is not self.tower:
            raise WrongField("elements of different towers")
        return other

    def __add__(self, other):
        other = self._check(other)
        t = self.tower
        if self.is_zero() and other.is_zero():
            return t.zero(min(self.shift, other.shift))
        if self.is_zero():
            return _cap_abs(other, self.shift)
        if other.is_zero():
            return _cap_abs(self, other.shift)
        v = min(self.shift, other.shift)
        a = _poly_shift_up(t, self.unit, self.shift - v)
        b = _poly_shift_up(t, other.unit, other.shift - v)
        coeffs = [t._cadd(x, y) for x, y in zip(a, b)]
        rprec = min(self.abs_prec(), other.abs_prec()) - v
        return _make(t, v, coeffs, rprec)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        coeffs = [self.tower._cneg(c) for c in self.unit]
        return LocalElem(self.tower, self.shift, coeffs, self.rprec)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        t = self.tower
        if self.is_zero() or other.is_zero():
            return t.zero(self.shift + other.shift)
        coeffs = _poly_mul(t, self.unit, other.unit)
        return _make(t, self.shift + other.shift, coeffs, min(self.rprec, other.rprec))

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise DivisionByNonUnitBeyondPrecision("inverse of (precision-)zero")
        t = self.tower
        c0 = self.unit[0]
        x = [t._cinv(c0)] + [t._czero()] * (t.e - 1)
        # Newton: x <- x*(2 - u*x), quadratic convergence in the phi-adic sense
        steps = max(1, (self.rprec).bit_length() + t.e.bit_length())
        two = t._coerce_coeff(2)
        for _ in range(steps):
            ux = _poly_mul(t, self.unit, x)
            corr = [t._cneg(c) for c in ux]
            corr[0] = t._cadd(corr[0], two)
            x = _poly_mul(t, x, corr)
        return _make(t, -self.shift, x, self.rprec)

    def __truediv__(self, other):
        return self * self._check(other).inv()

    def __rtruediv__(self, other):
        return self._check(other) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = self.tower.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def tau(self):
        """The automorphism phi -> -phi (generator over the index-2 subtower)."""
        if self.is_zero():
            return self
        coeffs = [
            c if (i + self.shift) % 2 == 0 else self.tower._cneg(c)
            for i, c in enumerate(self.unit)
        ]
        return LocalElem(self.tower, self.shift, coeffs, self.rprec)

    def galois_phi_scale(self, zeta):
        """The automorphism phi -> zeta*phi for a root of unity zeta."""
        if self.is_zero():
            return self
        t = self.tower
        out = t.zero(self.abs_prec())
        for i, c in enumerate(self.unit):
            if i >= self.rprec:
                break
            term = _make(t, self.shift + i, [c] + [t._czero()] * (t.e - 1), self.rprec - i)
            out = out + term * zeta ** (self.shift + i)
        return out

    def equal_mod(self, other, phi_digits):
        d = self - self._check(other)
        return d.is_zero() or d.shift >= phi_digits

    def __eq__(self, other):
        """Equality within the shared precision."""
        try:
            other = self._check(other)
        except TypeError:
            return NotImplemented
        return self.equal_mod(other, min(self.abs_prec(), other.abs_prec()))

    def __repr__(self):
        if self.is_zero():
            return f"O(phi^{self.shift})"
        return f"phi^{self.shift}*{self.unit} + O(phi^{self.shift + self.rprec})"


def _cap_abs(x, absprec):
    """Truncate x to absolute precision phi^absprec."""
    if x.is_zero():
        return LocalElem(x.tower, min(x.shift, absprec), None, 0)
    if absprec <= x.shift:
        return LocalElem(x.tower, absprec, None, 0)
    return LocalElem(x.tower, x.shift, x.unit, min(x.rprec, absprec - x.shift))


def sqrt_unit(x: LocalElem, prefer=None) -> LocalElem:
    """Hensel square root of a valuation-zero element whose residue is a
    square; ``prefer`` picks the residue branch."""
    if x.is_zero() or x.phi_valuation() != 0:
        raise SquareDiscriminant("square roots only for valuation-zero units")
    t = x.tower
    r = x.leading_unit()
    if not r.is_square():
        raise SquareDiscriminant("residue is not a square")
    k = t.residue_field
    root = k.gen ** (k.dlog(r) // 2)
    if prefer is not None and root != k.coerce(prefer):
        root = -root
    if prefer is not None and root != k.coerce(prefer):
        raise SquareDiscriminant("requested branch is not a square root")
    y = t.from_residue(root)
    inv2 = t.from_int(2).inv()
    for _ in range(t.rprec_cap.bit_length() + 1):
        y = (y + x / y) * inv2
    return y


def elem_arith(x: LocalElem, y, op: str) -> LocalElem:
    """Dispatcher form of the arithmetic (add/mul/inv/pow)."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inv()
    if op == "pow":
        return x**y
    raise ValueError(f"unknown op {op!r}")


def val(x: LocalElem) -> Fraction:
    return x.valuation()


def leading_unit(x: LocalElem):
    return x.leading_unit()


# tame quadratic symbols ------------------------------------------------------


def _subfield_val_unit(x: LocalElem, sub: int):
    """Valuation and leading unit of x viewed in the subtower F[phi^sub]."""
    if x.is_zero():
        raise IndistinguishableFromZero("symbol of (precision-)zero")
    t = x.tower
    if t.e % sub != 0:
        raise WrongField("subtower index must divide the Kummer degree")
    if x.shift % sub != 0:
        raise WrongField("element does not lie in the requested subtower")
    for i, c in enumerate(x.unit):
        if (x.shift + i) % sub != 0 and t._cvalp(c) * t.e + i < x.rprec:
            raise WrongField("element does not lie in the requested subtower")
    return x.shift // sub, x.leading_unit()


def tame_hilbert(x: LocalElem, y: LocalElem, sub: int = 1) -> int:
    """Quadratic tame symbol of the subtower K = F[phi^sub] at x, y.

    Computed as w0((-1)^{v(x)v(y)} lu(x)^{v(y)} lu(y)^{-v(x)}) over the
    residue field, with v the normalized integer valuation of K.
    """
    vx, ux = _subfield_val_unit(x, sub)
    vy, uy = _subfield_val_unit(y, sub)
    k = x.tower.residue_field
    w0 = k.omega0()
    t = k.coerce(-1) ** (vx * vy) * ux**vy * uy ** (-vx)
    return 1 if abs(w0(t) - 1) < 0.5 else -1


def sgn_quad(d: LocalElem, x: LocalElem, sub: int = 1) -> int:
    """+1 iff x is a norm from K(sqrt(d)), for a nonsquare d of K = F[phi^sub]."""
    if _is_square_in_subtower(d, sub):
        raise SquareDiscriminant("discriminant is a square")
    return tame_hilbert(x, d, sub)


def _is_square_in_subtower(d: LocalElem, sub: int) -> bool:
    v, u = _subfield_val_unit(d, sub)
    if v % 2 != 0:
        return False
    return u.is_square()


# piecewise-linear Herbrand functions ----------------------------------------


class PLFunc:
    """Continuous piecewise-linear increasing concave function with f(0) = 0.

    ``breaks`` are the interior breakpoints, ``slopes`` the per-segment slopes
    (one more than breaks), all exact rationals.
    """

    def __init__(self, breaks, slopes):
        self.breaks = [Fraction(b) for b in breaks]
        self.slopes = [Fraction(s) for s in slopes]
        if len(self.slopes) != len(self.breaks) + 1:
            raise NonMonotone("need one slope per segment")
        if any(b2 <= b1 for b1, b2 in zip(self.breaks, self.breaks[1:])):
            raise NonMonotone("breakpoints must increase")
        if any(s <= 0 for s in self.slopes):
            raise NonMonotone("slopes must be positive")
        if any(s2 > s1 for s1, s2 in zip(self.slopes, self.slopes[1:])):
            raise NonMonotone("slopes must not increase (concavity)")

    @classmethod
    def identity(cls):
        return cls([], [1])

    def __call__(self, u):
        u = Fraction(u)
        out = Fraction(0)
        prev = Fraction(0)
        for b, s in zip(self.breaks, self.slopes):
            if u <= b:
                return out + s * (u - prev)
            out += s * (b - prev)
            prev = b
        return out + self.slopes[-1] * (u - prev)

    def inverse_at(self, y):
        y = Fraction(y)
        out = Fraction(0)
        prev_u = Fraction(0)
        for b, s in zip(self.breaks, self.slopes):
            seg = s * (b - prev_u)
            if y <= out + seg:
                return prev_u + (y - out) / s
            out += seg
            prev_u = b
        return prev_u + (y - out) / self.slopes[-1]

    def compose(self, inner: "PLFunc") -> "PLFunc":
        """self o inner."""
        cands = set(inner.breaks)
        for b in self.breaks:
            cands.add(inner.inverse_at(b))
        cands = sorted(c for c in cands if c > 0)
        end = (cands[-1] if cands else Fraction(1)) + 1
        pts = [Fraction(0)] + cands + [end]
        slopes = [
            (self(inner(b)) - self(inner(a))) / (b - a)
            for a, b in zip(pts, pts[1:])
        ]
        # drop spurious candidates where the slope does not actually change
        out_breaks, out_slopes = [], [slopes[0]]
        for b, s in zip(cands, slopes[1:]):
            if s != out_slopes[-1]:
                out_breaks.append(b)
                out_slopes.append(s)
        return PLFunc(out_breaks, out_slopes)

    def __eq__(self, other):
        return (
            isinstance(other, PLFunc)
            and self.breaks == other.breaks
            and self.slopes == other.slopes
        )

    def __repr__(self):
        return f"PLFunc(breaks={self.breaks}, slopes={self.slopes})"


def herbrand_compose(stages) -> PLFunc:
    """Compose Herbrand functions bottom-to-top of a tower.

    ``stages[0]`` is the bottom (largest) step; the composite is
    stages[0] o stages[1] o ... o stages[-1].
    """
    out = PLFunc.identity()
    for st in stages:
        out = out.compose(st)
    return out


def extract_jumps(f: PLFunc):
    """Breakpoints with the index drop [Q_b : Q_{b+}] = slope ratio at each."""
    out = []
    for i, b in enumerate(f.breaks):
        ratio = f.slopes[i] / f.slopes[i + 1]
        out.append((b, ratio))
    return out
