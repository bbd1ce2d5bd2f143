"""Matrix models of the classical groups and their Iwahori filtrations.

Each group kind carries a rational weight vector describing the standard
alcove point; the three filtration steps I, I+, I++ become entry-valuation
masks ceil(r - x_i + x_j) at levels r = 0, 1/h, 2/h.  Simple affine
components are residues of designated entries (one of them pi-scaled, and a
quadratic-extension pair for the unramified even orthogonal group).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidParams,
    NotAffineGeneric,
    NotInIplus,
    PrecisionExhausted,
    UnsupportedDegree,
)
from .linalg import (
    charpoly,
    mat_eq,
    mat_id,
    mat_inv,
    mat_mul,
    mat_transpose,
    poly_mul,
    poly_shift_basis,
)
from .padic import LocalElem, TowerSpec
from .residue import make_field


class GroupKind(enum.Enum):
    GL = "gl"
    TWISTED_GL = "gl_theta"
    SP = "sp"
    SO_RAM = "so_ram"
    SO_SPL = "so_spl"
    SO_UR = "so_ur"


class Level(enum.IntEnum):
    OUTSIDE = 0
    I = 1
    IPLUS = 2
    IPLUSPLUS = 3


@dataclass(frozen=True)
class GroupId:
    """A group kind together with its rank parameter.

    For GL the parameter is the matrix size N itself; for the twisted GL it
    is n (size 2n); Sp and the ramified SO have size 2n; the split and
    unramified even orthogonal groups have size 2n+2.  ``nu_mu`` picks the
    middle entry -pi*eps^nu of the ramified orthogonal form.
    """

    kind: GroupKind
    n: int
    nu_mu: int = 0

    @property
    def size(self):
        if self.kind is GroupKind.GL:
            return self.n
        if self.kind in (GroupKind.TWISTED_GL, GroupKind.SP, GroupKind.SO_RAM):
            return 2 * self.n
        return 2 * self.n + 2

    @property
    def coxeter(self):
        if self.kind in (GroupKind.GL, GroupKind.TWISTED_GL):
            return self.size
        return 2 * self.n

    @property
    def t_invariant(self):
        return 1 if self.kind is GroupKind.SO_UR else 0

    def weight_vector(self):
        """Alcove point coordinates governing the filtration masks."""
        n = self.n
        if self.kind in (GroupKind.GL, GroupKind.TWISTED_GL):
            N = self.size
            return [Fraction(N - i, N) for i in range(1, N + 1)]
        if self.kind is GroupKind.SP:
            top = [Fraction(1, 4 * n) + Fraction(n - i, 2 * n) for i in range(1, n + 1)]
            return top + [-x for x in reversed(top)]
        if self.kind is GroupKind.SO_RAM:
            top = [Fraction(n - i, 2 * n) for i in range(1, n)]
            return top + [Fraction(0), Fraction(1, 2)] + [-x for x in reversed(top)]
        # split / unramified SO_{2n+2}
        top = [Fraction(n - i + 1, 2 * n) for i in range(1, n + 1)]
        return top + [Fraction(0), Fraction(0)] + [-x for x in reversed(top)]

    def component_slots(self):
        """Entry positions (0-based) whose residues are the simple affine
        components; each is (i, j, pi_power) and the unramified middle slot is
        a pair of entries combined into the quadratic extension."""
        n = self.n
        if self.kind in (GroupKind.GL, GroupKind.TWISTED_GL):
            N = self.size
            return [(i, i + 1, 0) for i in range(N - 1)] + [(N - 1, 0, 1)]
        if self.kind is GroupKind.SP:
            return [(i, i + 1, 0) for i in range(n)] + [(2 * n - 1, 0, 1)]
        if self.kind is GroupKind.SO_RAM:
            return [(i, i + 1, 0) for i in range(n - 1)] + [(n, 0, 0)]
        if self.kind is GroupKind.SO_SPL:
            return (
                [(i, i + 1, 0) for i in range(n)]
                + [(n - 1, n + 1, 0)]
                + [(2 * n, 0, 1)]
            )
        # SO_UR: n-1 plain slots, one quadratic pair, one pi-scaled slot
        return (
            [(i, i + 1, 0) for i in range(n - 1)]
            + [((n - 1, n, 0), (n - 1, n + 1, 0))]
            + [(2 * n, 0, 1)]
        )

    def __repr__(self):
        if self.kind is GroupKind.SO_RAM:
            return f"GroupId({self.kind.value}, n={self.n}, nu={self.nu_mu})"
        return f"GroupId({self.kind.value}, n={self.n})"


def form(group: GroupId, base: TowerSpec):
    """The defining bilinear form matrix (None for the general linear kinds)."""
    N = group.size
    n = group.n
    k = base.residue_field
    if group.kind in (GroupKind.GL, GroupKind.TWISTED_GL):
        return None
    rows = [[base.zero() for _ in range(N)] for _ in range(N)]
    if group.kind is GroupKind.SP:
        for i in range(N):
            rows[i][N - 1 - i] = base.from_int((-1) ** i)
        return rows
    if group.kind is GroupKind.SO_SPL:
        for i in range(N):
            rows[i][N - 1 - i] = base.one()
        return rows
    if group.kind is GroupKind.SO_RAM:
        for i in range(N):
            if i not in (n - 1, n):
                rows[i][N - 1 - i] = base.one()
        rows[n - 1][n - 1] = base.one()
        star = base.from_int(-(k.eps.a ** group.nu_mu)) * base.pi()
        rows[n][n] = star
        return rows
    if group.kind is GroupKind.SO_UR:
        for i in range(N):
            if i not in (n, n + 1):
                rows[i][N - 1 - i] = base.one()
        rows[n][n] = base.one()
        rows[n + 1][n + 1] = base.from_int(-k.eps.a)
        return rows
    raise UnsupportedDegree(f"no form for {group.kind}")


def anti_j(base: TowerSpec, N: int):
    """The antidiagonal matrix with (i, N+1-i) entry (-1)^(i-1)."""
    rows = [[base.zero() for _ in range(N)] for _ in range(N)]
    for i in range(N):
        rows[i][N - 1 - i] = base.from_int((-1) ** i)
    return rows


@dataclass
class GroupMatrix:
    group: GroupId
    base: TowerSpec
    entries: list

    def __mul__(self, other: "GroupMatrix") -> "GroupMatrix":
        return GroupMatrix(self.group, self.base, mat_mul(self.entries, other.entries))

    def inv(self) -> "GroupMatrix":
        return GroupMatrix(self.group, self.base, mat_inv(self.entries))

    def neg(self) -> "GroupMatrix":
        return GroupMatrix(
            self.group, self.base, [[-x for x in row] for row in self.entries]
        )

    def entry(self, i, j) -> LocalElem:
        return self.entries[i][j]


def group_identity(group: GroupId, base: TowerSpec) -> GroupMatrix:
    return GroupMatrix(group, base, mat_id(base, group.size))


CHECK_DIGITS = 2


def is_member(g: GroupMatrix, phi_digits: int | None = None) -> bool:
    """Form-compatibility (and det 1 for the orthogonal kinds) within precision."""
    J = form(g.group, g.base)
    digits = phi_digits if phi_digits is not None else CHECK_DIGITS
    if J is None:
        try:
            mat_inv(g.entries)
            return True
        except PrecisionExhausted:
            return False
    lhs = mat_mul(mat_transpose(g.entries), mat_mul(J, g.entries))
    if not mat_eq(lhs, J, digits):
        return False
    if g.group.kind in (GroupKind.SO_RAM, GroupKind.SO_SPL, GroupKind.SO_UR):
        from .linalg import mat_det

        if not mat_det(g.entries).equal_mod(g.base.one(), digits):
            return False
    return True


def theta(g: GroupMatrix) -> GroupMatrix:
    """The outer involution g -> J_N (g^T)^{-1} J_N^{-1} of the linear group."""
    N = g.group.size
    J = anti_j(g.base, N)
    Jinv = mat_inv(J)
    out = mat_mul(J, mat_mul(mat_inv(mat_transpose(g.entries)), Jinv))
    return GroupMatrix(g.group, g.base, out)


def _mask(group: GroupId, level: Fraction, strict: bool):
    x = group.weight_vector()
    N = group.size
    out = [[0] * N for _ in range(N)]
    for i in range(N):
        for j in range(N):
            t = level - x[i] + x[j]
            if strict:
                m = t.numerator // t.denominator + 1  # floor + 1
            else:
                m = -((-t.numerator) // t.denominator)  # ceil
            out[i][j] = m
    return out


def _entry_val_ge(x: LocalElem, m: int, e: int) -> bool:
    """val(x) >= m (in pi-units) within what the precision can certify."""
    if x.is_zero():
        return True
    return x.phi_valuation() >= m * e


def iwahori_level(g: GroupMatrix) -> Level:
    """Deepest of I, I+, I++ containing g (entry-mask classification)."""
    base = g.base
    e = base.e
    h = g.group.coxeter
    one = base.one()

    def fits(level: Fraction, strict: bool, unipotent: bool) -> bool:
        mask = _mask(g.group, level, strict)
        for i in range(g.group.size):
            for j in range(g.group.size):
                x = g.entries[i][j]
                if i == j:
                    d = x - one
                    if unipotent and not _entry_val_ge(d, 1, e):
                        return False
                    if not unipotent and (x.is_zero() or x.phi_valuation() != 0):
                        return False
                    continue
                if not _entry_val_ge(x, mask[i][j], e):
                    return False
        return True

    if not fits(Fraction(0), False, False):
        return Level.OUTSIDE
    if not fits(Fraction(1, h), False, True):
        return Level.I
    if not fits(Fraction(2, h), False, True):
        return Level.IPLUS
    return Level.IPLUSPLUS


def simple_affine_components(g: GroupMatrix):
    """Residue tuple attached to an element of I+."""
    if iwahori_level(g) < Level.IPLUS:
        raise NotInIplus("components are defined on I+ only")
    return _components_unchecked(g)


def _components_unchecked(g: GroupMatrix):
    base = g.base
    k = base.residue_field
    out = []
    for slot in g.group.component_slots():
        if isinstance(slot[0], tuple):
            (i1, j1, _), (i2, j2, _) = slot
            a = _residue_at(g.entries[i1][j1], 0, base)
            b = _residue_at(g.entries[i2][j2], 0, base)
            kk = make_field(base.p, 2)
            out.append(kk.elem(a.a, b.a))
        else:
            i, j, s = slot
            out.append(_residue_at(g.entries[i][j], s, base))
    return out


def _residue_at(x: LocalElem, pi_power: int, base: TowerSpec):
    k = base.residue_field
    if x.is_zero():
        return k.zero
    v = x.phi_valuation()
    target = pi_power * base.e
    if v > target:
        return k.zero
    if v < target:
        raise NotInIplus(f"entry valuation {v} below slot level {target}")
    return x.leading_unit()


def is_affine_generic(g: GroupMatrix) -> bool:
    return all(not c.is_zero() for c in simple_affine_components(g))


# distinguished normalizer elements ------------------------------------------


def phi_element(group: GroupId, base: TowerSpec, *params) -> GroupMatrix:
    """The Iwahori-normalizing elements attached to each group kind."""
    N = group.size
    n = group.n
    Z = base.zero
    if group.kind in (GroupKind.GL, GroupKind.TWISTED_GL):
        (a,) = params
        rows = [[Z() for _ in range(N)] for _ in range(N)]
        for i in range(N - 1):
            rows[i][i + 1] = base.one()
        rows[N - 1][0] = base.from_residue(_res_int(a)) * base.pi()
        return GroupMatrix(group, base, rows)
    if group.kind is GroupKind.SO_SPL:
        alpha, beta = params
        ai = _res_int(alpha)
        bi = _res_int(beta)
        if ai == 0 or bi == 0:
            raise InvalidParams("phi parameters must be units")
        rows = [[Z() for _ in range(N)] for _ in range(N)]
        binv = (base.from_residue(bi) * base.pi()).inv()
        rows[0][N - 1] = binv
        for i in range(1, n):
            rows[i][i] = base.one()
        rows[n][n + 1] = base.from_residue(ai).inv()
        rows[n + 1][n] = base.from_residue(ai)
        for i in range(n + 2, N - 1):
            rows[i][i] = base.one()
        rows[N - 1][0] = base.from_residue(bi) * base.pi()
        return GroupMatrix(group, base, rows)
    if group.kind is GroupKind.SO_UR:
        alpha, beta = params
        # alpha = x + y*sqrt(eps) with norm 1, given as a residue-field pair
        k2 = make_field(base.p, 2)
        al = alpha if hasattr(alpha, "a") else k2.elem(alpha)
        bi = _res_int(beta)
        if bi == 0:
            raise InvalidParams("phi parameter beta must be a unit")
        nr = (al.a * al.a - k2._base_nonsquare * al.b * al.b) % base.p
        if nr != 1:
            raise InvalidParams("alpha must have norm one")
        rows = [[Z() for _ in range(N)] for _ in range(N)]
        rows[0][N - 1] = (base.from_residue(bi) * base.pi()).inv()
        for i in range(1, n):
            rows[i][i] = base.one()
        eps = base.residue_field.eps.a
        rows[n][n] = base.from_residue(al.a)
        rows[n][n + 1] = base.from_residue(al.b)
        rows[n + 1][n] = base.from_residue((eps * al.b) % base.p)
        rows[n + 1][n + 1] = base.from_residue(al.a)
        for i in range(n + 2, N - 1):
            rows[i][i] = base.one()
        rows[N - 1][0] = base.from_residue(bi) * base.pi()
        flip = mat_id(base, N)
        flip[n + 1][n + 1] = base.from_int(-1)
        return GroupMatrix(group, base, mat_mul(rows, flip))
    raise InvalidParams(f"no phi element for {group.kind}")


def _res_int(a):
    return a.a if hasattr(a, "a") else int(a)


# characteristic-polynomial lemmas --------------------------------------------


def px_masks(n: int):
    """Filtration masks for the odd general linear group at the point whose
    weights are (2n+1-i)/2n: returns (plus_mask, plusplus_mask)."""
    N = 2 * n + 1
    x = [Fraction(2 * n + 1 - i, 2 * n) for i in range(1, N + 1)]
    r = Fraction(1, 2 * n)
    plus = [
        [-((-(r - x[i] + x[j]).numerator) // (r - x[i] + x[j]).denominator) for j in range(N)]
        for i in range(N)
    ]
    pp = [
        [
            (r - x[i] + x[j]).numerator // (r - x[i] + x[j]).denominator + 1
            for j in range(N)
        ]
        for i in range(N)
    ]
    return plus, pp


def in_px_plus(g: GroupMatrix) -> bool:
    n = (g.group.size - 1) // 2
    plus, _ = px_masks(n)
    e = g.base.e
    one = g.base.one()
    for i in range(g.group.size):
        for j in range(g.group.size):
            x = g.entries[i][j] if i != j else g.entries[i][j] - one
            m = plus[i][j] if i != j else 1
            if not _entry_val_ge(x, m, e):
                return False
    return True


def charpoly_shifted(g: GroupMatrix):
    """Coefficients of det(T - g) in powers of (T - 1), lowest first."""
    cp = charpoly(g.entries)
    return poly_shift_basis(cp, g.base)


def charpoly_eisenstein_check(g: GroupMatrix):
    """For affine generic Iwahori-unipotent linear elements: all lower
    coefficients in the maximal ideal and the constant term congruent to the
    product of the superdiagonal entries times the corner entry mod pi^2."""
    if iwahori_level(g) < Level.IPLUS:
        raise NotAffineGeneric("element is not in I+")
    if not is_affine_generic(g):
        raise NotAffineGeneric("element is not affine generic")
    N = g.group.size
    e = g.base.e
    coeffs = charpoly_shifted(g)
    ok = all(_entry_val_ge(coeffs[i], 1, e) for i in range(N))
    # det(1 - x) picks up a minus sign against the superdiagonal cycle
    prod = -g.entries[N - 1][0]
    for i in range(N - 1):
        prod = prod * g.entries[i][i + 1]
    ok = ok and coeffs[0].equal_mod(prod, 2 * e)
    a0_res = _residue_at(coeffs[0], 1, g.base) if not coeffs[0].is_zero() else None
    return ok, a0_res


def twisted_norm_charpoly_check(x: GroupMatrix, norm_y: GroupMatrix | None = None):
    """Characteristic polynomial of x*theta(x) for x in the odd filtration
    group: constant term vanishes, the linear term has the stated residue,
    and the polynomial factors through the supplied norm."""
    if not in_px_plus(x):
        from .errors import NotInFiltration

        raise NotInFiltration("element is not in the odd filtration subgroup")
    base = x.base
    N = x.group.size
    n = (N - 1) // 2
    z = mat_mul(x.entries, theta(x).entries)
    zg = GroupMatrix(x.group, base, z)
    coeffs = charpoly_shifted(zg)
    a0_zero = coeffs[0].is_zero() or coeffs[0].phi_valuation() >= 3 * base.e
    # a1 = -z_23...z_{2n-1,2n} (z_{2n,2n+1} z_{2n+1,2} + z_{2n,1} z_{1,2})
    t = -(z[2 * n - 1][2 * n] * z[2 * n][1] + z[2 * n - 1][0] * z[0][1])
    for i in range(1, 2 * n - 1):
        t = t * z[i][i + 1]
    a1_ok = coeffs[1].equal_mod(t, 2 * base.e)
    factor_ok = None
    if norm_y is not None:
        py = charpoly(norm_y.entries)
        lin = [base.from_int(-1), base.one()]
        prod = poly_mul(py, lin, base)
        pz = charpoly(z)
        factor_ok = all(
            a.equal_mod(b, min(a.abs_prec(), b.abs_prec()))
            for a, b in zip(prod, pz)
        )
    a1_res = None if coeffs[1].is_zero() else _residue_at(coeffs[1], 1, base)
    return a0_zero and a1_ok and (factor_ok is not False), a1_res
