"""Obstruction pipeline for an ideal n of g and a covector a on n.

Notation: k is the stabilizer of a in n, l its stabilizer in g (for the
coadjoint action of g on n*), j = ker(a|k).  An extension a_check of a to g
is fixed by declaring a complement of n and setting a_check = 0 there.

* theta(l) = a_check - l(a_check), valued in ann(n);
* f(x, y) = <a_check, [x, y]> on l/k (the derivative of theta at e);
* f_ext(x, y) = <a o p, [x, y]>, p the projection of l onto k along a
  complement v of k in l; its class is that of 0 -> k/j -> l/j -> l/k -> 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import cohomology as co
from . import groups as gr
from . import lie
from . import linalg as la
from .errors import ConsistencyError, DomainError

NUMERIC_TOL = 1e-9


def extend_covector(alg: lie.LieAlgebra, ideal: lie.Subspace, a, complement: lie.Subspace) -> np.ndarray:
    """a_check equal to a on ``ideal`` and zero on ``complement``."""
    a = la.frac_array(a)
    if a.shape != (ideal.dim,):
        raise DomainError(f"a has {a.shape[0]} coefficients, ideal has dimension {ideal.dim}")
    n = alg.dim
    if complement.dim + ideal.dim != n or (complement + ideal).dim != n:
        raise DomainError("declared complement is not complementary to the ideal")
    if n == 0:
        return la.zeros(0)
    basis = np.concatenate([ideal.basis, complement.basis]).reshape(n, n)
    rhs = np.concatenate([a, la.zeros(complement.dim)])
    out = la.solve(basis, rhs)
    if out is None or not la.is_zero(lie.restrict(out, ideal) - a):
        raise ConsistencyError("extension of a does not restrict to a")
    return out


@dataclass(frozen=True, eq=False)
class OrbitDatum:
    """g, an ideal n, a in n* (coordinates on n's echelon basis), a_check, complement."""

    alg: lie.LieAlgebra
    ideal: lie.Subspace
    a: np.ndarray
    a_check: np.ndarray
    complement: lie.Subspace
    name: str = ""

    def __post_init__(self):
        if not lie.is_ideal(self.alg, self.ideal):
            raise DomainError("n is not an ideal of g")
        a = la.frac_array(self.a)
        ac = la.frac_array(self.a_check)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "a_check", ac)
        if ac.shape != (self.alg.dim,):
            raise DomainError("a_check must be a covector on g")
        if not la.is_zero(lie.restrict(ac, self.ideal) - a):
            raise DomainError("a_check does not restrict to a on n")
        n = self.alg.dim
        if self.complement.dim + self.ideal.dim != n or (self.complement + self.ideal).dim != n:
            raise DomainError("declared complement is not complementary to n")
        if (self.ideal + self.l).dim != n:
            raise DomainError("decomposition g = n + l fails: the G-orbit of a is not open in n*-terms")

    @classmethod
    def build(cls, alg, ideal, a, complement=None, a_check=None, name=""):
        if complement is None:
            complement = ideal.complement()
        if a_check is None:
            a_check = extend_covector(alg, ideal, a, complement)
        return cls(alg, ideal, a, a_check, complement, name)

    @cached_property
    def l(self) -> lie.Subspace:
        return lie.stabilizer_subalgebra(self.alg, self.a, ideal=self.ideal)

    @cached_property
    def k(self) -> lie.Subspace:
        return self.ideal.intersect(self.l)

    @cached_property
    def a_on_k(self) -> np.ndarray:
        return lie.restrict(self.a_check, self.k)

    @cached_property
    def a_vanishes_on_k(self) -> bool:
        return la.is_zero(self.a_on_k)

    @cached_property
    def j(self) -> lie.Subspace:
        if self.k.dim == 0:
            return self.k
        ker = la.nullspace(self.a_on_k.reshape(1, -1), self.k.dim)
        return lie.Subspace(self.alg, [c @ self.k.basis for c in ker])

    @cached_property
    def annihilator(self) -> lie.Subspace:
        return lie.annihilator(self.alg, self.ideal)

    @cached_property
    def l_complement(self) -> lie.Subspace:
        """Complement of k inside l used for the ln + ll split.

        The declared complement of n is used when it lies in l; otherwise
        the canonical one (unit vectors at non-pivot columns of k inside l).
        """
        if self.complement <= self.l:
            return self.complement
        return complement_within(self.alg, self.k, self.l)

    def with_a_check(self, a_check) -> OrbitDatum:
        return OrbitDatum(self.alg, self.ideal, self.a, a_check, self.complement, self.name)

    def with_complement(self, complement: lie.Subspace) -> OrbitDatum:
        return OrbitDatum.build(self.alg, self.ideal, self.a, complement, name=self.name)

    def vanishing_choice(self) -> OrbitDatum:
        """Datum whose a_check is a on n and 0 on a complement of k in l."""
        comp = complement_within(self.alg, self.k, self.l)
        return OrbitDatum.build(self.alg, self.ideal, self.a, comp, name=self.name)


def complement_within(alg: lie.LieAlgebra, sub: lie.Subspace, big: lie.Subspace, coeffs=None) -> lie.Subspace:
    """A complement of ``sub`` inside ``big``.

    Without ``coeffs`` the canonical one is returned.  ``coeffs`` (a
    ``(dim big - dim sub) x dim sub`` rational matrix) shears it by
    adding combinations of ``sub``'s basis, giving other complements.
    """
    inner = lie.subalgebra_coords(big, sub)
    free = [j for j in range(big.dim) if j not in _pivots(inner)]
    vecs = [big.basis[j] for j in free]
    if coeffs is not None and sub.dim:
        coeffs = la.frac_array(coeffs).reshape(len(vecs), sub.dim)
        vecs = [v + coeffs[i] @ sub.basis for i, v in enumerate(vecs)]
    return lie.Subspace(alg, vecs)


def _pivots(rows) -> list:
    if len(rows) == 0:
        return []
    return la.rref(np.array(rows, dtype=object))[1]


# --------------------------------------------------------------------------
# theta


def _element_action(datum: OrbitDatum, l):
    """Return (action on covectors, exact flag) for an ExpWord or matrix element."""
    if isinstance(l, lie.ExpWord):
        if l.algebra != datum.alg:
            raise DomainError("element belongs to a different algebra")
        return l.coadjoint, True
    if isinstance(l, gr.MatrixGroupElement):
        grp = gr.group(l.tag)
        if grp.algebra != datum.alg:
            raise DomainError(f"datum algebra does not match group {l.tag}")
        return (lambda xi: gr.coadjoint_dual(grp, l, xi)), False
    raise DomainError(f"unsupported group element {type(l).__name__}")


def theta(datum: OrbitDatum, l, *, tol: float = NUMERIC_TOL) -> np.ndarray:
    """a_check - l(a_check) for l in the stabilizer L of a.

    Exact for ExpWord elements, floating point for matrix elements.
    """
    act, exact = _element_action(datum, l)
    moved = act(datum.a_check)
    if exact:
        if not la.is_zero(lie.restrict(moved, datum.ideal) - datum.a):
            raise DomainError("element does not stabilize a")
        return datum.a_check - moved
    diff = lie.restrict(np.asarray(moved, float), datum.ideal) - datum.a.astype(float)
    if np.max(np.abs(diff), initial=0.0) >= tol:
        raise DomainError(f"element does not stabilize a (defect {np.abs(diff).max():.2e})")
    return datum.a_check.astype(float) - moved


def in_annihilator(datum: OrbitDatum, v, tol: float = NUMERIC_TOL) -> bool:
    v = np.asarray(v)
    r = lie.restrict(v, datum.ideal)
    if v.dtype == object:
        return la.is_zero(r)
    return bool(np.max(np.abs(r), initial=0.0) < tol)


def coboundary_range_certifies(datum: OrbitDatum, l, value, tol: float = NUMERIC_TOL) -> bool:
    """True when ``value`` is outside {w - l(w) : w in ann(n)}.

    A theta value outside that range at a single element cannot be the
    coboundary of any w, so it certifies a nontrivial class.
    """
    act, exact = _element_action(datum, l)
    ann = datum.annihilator.basis
    cols = [w - act(w) for w in ann]
    if exact:
        if not cols:
            return not la.is_zero(value)
        m = np.array(cols, dtype=object).T
        return la.solve(m, la.frac_array(value)) is None
    value = np.asarray(value, dtype=float)
    if not cols:
        return bool(np.abs(value).max(initial=0.0) > tol)
    m = np.array(cols, dtype=float).T
    sol, *_ = np.linalg.lstsq(m, value, rcond=None)
    return bool(np.abs(m @ sol - value).max() > tol)


# --------------------------------------------------------------------------
# infinitesimal obstruction and the central extension


@dataclass(frozen=True, eq=False)
class QuotientPair:
    """l/k realised inside the intrinsic algebra of l."""

    l_alg: lie.LieAlgebra
    k_in_l: lie.Subspace
    quotient: lie.Quotient


def _l_quotient(datum: OrbitDatum, comp: lie.Subspace | None = None) -> QuotientPair:
    l_alg = lie.subalgebra(datum.alg, datum.l)
    k_in_l = lie.Subspace(l_alg, lie.subalgebra_coords(datum.l, datum.k))
    comp_in_l = None
    if comp is not None:
        comp_in_l = lie.Subspace(l_alg, lie.subalgebra_coords(datum.l, comp))
    return QuotientPair(l_alg, k_in_l, lie.quotient(l_alg, k_in_l, comp_in_l))


def _to_g(datum: OrbitDatum, v_in_l) -> np.ndarray:
    v = np.asarray(v_in_l)
    if datum.l.dim == 0:
        return la.zeros(datum.alg.dim)
    return v @ datum.l.basis


def infinitesimal_obstruction(datum: OrbitDatum) -> co.TwoCocycle:
    """f(x, y) = <a_check, [x, y]> on l/k, with exact consistency checks."""
    lk = _l_quotient(datum)
    g = datum.alg
    # well defined: <a_check, [k, l]> = 0
    for kv in datum.k.basis:
        for lv in datum.l.basis:
            if lie.pair(datum.a_check, lie.bracket(g, kv, lv)) != 0:
                raise ConsistencyError("f is not well defined on l/k: <a_check, [k, l]> != 0")
    q = lk.quotient
    d = q.algebra.dim
    m = la.zeros(d, d)
    reps = [_to_g(datum, q.section(la.unit(d, i))) for i in range(d)]
    for i in range(d):
        for j in range(d):
            m[i, j] = lie.pair(datum.a_check, lie.bracket(g, reps[i], reps[j]))
    f = co.TwoCocycle(q.algebra, m)
    if not f.is_cocycle():
        raise ConsistencyError(f"f fails the cocycle identity on {f.violation()}")
    return f


def extension_cocycle(datum: OrbitDatum, v_complement: lie.Subspace | None = None) -> co.TwoCocycle:
    """f_ext(x, y) = <a o p, [x, y]> on l/k, p: l -> k along ``v_complement``.

    The l/k basis is the same as in :func:`infinitesimal_obstruction`, so the
    two cochains can be subtracted.
    """
    if v_complement is None:
        v_complement = datum.l_complement
    lk = _l_quotient(datum)
    q = lk.quotient
    split = lie.decomposition(datum.k, v_complement)
    g = datum.alg
    d = q.algebra.dim
    reps = [_to_g(datum, q.section(la.unit(d, i))) for i in range(d)]
    m = la.zeros(d, d)
    for i in range(d):
        for j in range(d):
            br = lie.bracket(g, reps[i], reps[j])
            kpart = split(br)[0]
            m[i, j] = lie.pair(datum.a_on_k, kpart)
    f = co.TwoCocycle(q.algebra, m)
    if not f.is_cocycle():
        raise ConsistencyError(f"f_ext fails the cocycle identity on {f.violation()}")
    return f


def section_cocycle(datum: OrbitDatum, v_complement: lie.Subspace | None = None) -> co.TwoCocycle:
    """Extension cocycle <a, [s x, s y] - s [x, y]> from the section s = q onto v."""
    if v_complement is None:
        v_complement = datum.l_complement
    q = _l_quotient(datum).quotient
    split = lie.decomposition(datum.k, v_complement)
    g = datum.alg
    d = q.algebra.dim
    reps = [_to_g(datum, q.section(la.unit(d, i))) for i in range(d)]

    def s(v):
        kc, vc = split(v)
        return vc @ v_complement.basis if v_complement.dim else la.zeros(g.dim)

    m = la.zeros(d, d)
    for i in range(d):
        for j in range(d):
            val = lie.bracket(g, s(reps[i]), s(reps[j])) - s(lie.bracket(g, reps[i], reps[j]))
            kpart = split(val)[0]
            if not la.is_zero(split(val)[1]):
                raise ConsistencyError("section defect does not lie in k")
            m[i, j] = lie.pair(datum.a_on_k, kpart)
    return co.TwoCocycle(q.algebra, m)


@dataclass(frozen=True, eq=False)
class ExtensionData:
    j: lie.Subspace
    k_mod_j: int
    l_mod_j: lie.Quotient
    l_mod_k: lie.Quotient
    inclusion: np.ndarray
    projection: np.ndarray
    cocycle: co.TwoCocycle
    v_complement: lie.Subspace

    @property
    def dims(self) -> dict:
        return {
            "k/j": self.k_mod_j,
            "l/j": self.l_mod_j.algebra.dim,
            "l/k": self.l_mod_k.algebra.dim,
        }

    @property
    def is_exact(self) -> bool:
        d = self.dims
        if d["l/j"] != d["l/k"] + d["k/j"]:
            return False
        comp = self.projection @ self.inclusion
        return la.is_zero(comp) if comp.size else True


def extension_data(datum: OrbitDatum, v_complement: lie.Subspace | None = None) -> ExtensionData:
    if v_complement is None:
        v_complement = datum.l_complement
    lk = _l_quotient(datum)
    l_alg = lk.l_alg
    j_in_l = lie.Subspace(l_alg, lie.subalgebra_coords(datum.l, datum.j))
    lj = lie.quotient(l_alg, j_in_l)
    # k/j -> l/j: image of (a complement of j in k)
    k_in_l = lk.k_in_l
    kj_basis = complement_within(l_alg, j_in_l, k_in_l).basis
    inclusion = np.array([lj.project(v) for v in kj_basis], dtype=object).reshape(len(kj_basis), lj.algebra.dim).T
    # l/j -> l/k
    dlj, dlk = lj.algebra.dim, lk.quotient.algebra.dim
    proj = la.zeros(dlk, dlj)
    for i in range(dlj):
        proj[:, i] = lk.quotient.project(lj.section(la.unit(dlj, i)))
    return ExtensionData(
        j=datum.j,
        k_mod_j=datum.k.dim - datum.j.dim,
        l_mod_j=lj,
        l_mod_k=lk.quotient,
        inclusion=inclusion,
        projection=proj,
        cocycle=extension_cocycle(datum, v_complement),
        v_complement=v_complement,
    )


def class_comparison(datum: OrbitDatum, v_complement: lie.Subspace | None = None) -> co.CoboundaryResult:
    """Decide whether f - f_ext is a coboundary on l/k."""
    f = infinitesimal_obstruction(datum)
    fe = extension_cocycle(datum, v_complement)
    return co.is_coboundary(f - fe)


def infinitesimal_class_trivial(datum: OrbitDatum) -> bool:
    return bool(co.is_coboundary(infinitesimal_obstruction(datum)))


# --------------------------------------------------------------------------
# flat-bundle moment map


def split_test_vector(datum: OrbitDatum, x):
    """x = ln + ll with ln in n and ll in the complement of k inside l."""
    split = lie.decomposition(datum.ideal, datum.l_complement)
    x = np.asarray(x)
    cn, cl = split(x)
    nb, lb = datum.ideal.basis, datum.l_complement.basis
    if x.dtype != object:
        nb, lb = nb.astype(float), lb.astype(float)
    ln = cn @ nb if datum.ideal.dim else 0 * x
    ll = cl @ lb if datum.l_complement.dim else 0 * x
    return ln, ll


def flat_bundle_moment(datum: OrbitDatum, u_rep, z_psi, test, *, tol: float = NUMERIC_TOL):
    """<Phi([u, z]), ln + ll> = <u(a), ln> + <u(a_check) - a_check, ll> + <Psi(z), ll>.

    ``u_rep`` is an element of N (ExpWord or matrix element), ``z_psi`` the
    value Psi(z) in l* given on l's echelon basis; it must restrict to a on k,
    which makes the value independent of how the test vector is split.
    """
    act, exact = _element_action(datum, u_rep)
    z_psi = np.asarray(z_psi)
    psi_on_k = z_psi @ np.array(lie.subalgebra_coords(datum.l, datum.k), dtype=object).T if datum.k.dim else z_psi[:0]
    if exact and z_psi.dtype == object:
        if not la.is_zero(psi_on_k - datum.a_on_k):
            raise DomainError("Psi(z) does not restrict to a on k")
    elif np.max(np.abs(psi_on_k.astype(float) - datum.a_on_k.astype(float)), initial=0.0) >= tol:
        raise DomainError("Psi(z) does not restrict to a on k")
    test = np.asarray(test) if np.asarray(test).dtype != object else np.asarray(test)
    ln, ll = split_test_vector(datum, test)
    ua = act(datum.a_check)
    if not exact:
        ua = np.asarray(ua, float)
    # Psi on ll: coordinates of ll on l's basis
    ll_l = lie.coords_in(datum.l, ll)
    shift = ua - (datum.a_check if exact else datum.a_check.astype(float))
    return lie.pair(ua, ln) + lie.pair(shift, ll) + lie.pair(z_psi, ll_l)


# --------------------------------------------------------------------------
# reports


def _frac(v) -> str:
    v = la.to_fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def rational_row(v) -> list:
    return [_frac(x) for x in v]


@dataclass
class ThetaWitness:
    label: str
    value: np.ndarray
    exact: bool
    in_annihilator: bool
    certifies_class: bool


def witness_report(datum: OrbitDatum, witnesses) -> list[ThetaWitness]:
    out = []
    for label, l in witnesses:
        v = theta(datum, l)
        exact = np.asarray(v).dtype == object
        out.append(
            ThetaWitness(
                label=label,
                value=v,
                exact=exact,
                in_annihilator=in_annihilator(datum, v),
                certifies_class=coboundary_range_certifies(datum, l, v),
            )
        )
    return out


def default_witnesses(datum: OrbitDatum, limit: int = 8):
    """exp(x) for basis vectors x of l whose coadjoint series terminates.

    Termination is needed on a_check (for theta) and on the annihilator
    basis (for the coboundary-range certificate).
    """
    out = []
    for i, x in enumerate(datum.l.basis):
        w = lie.ExpWord(datum.alg, (x,))
        try:
            for v in (datum.a_check, *datum.annihilator.basis):
                w.coadjoint(v)
        except DomainError:
            continue
        out.append((f"exp(l{i})", w))
        if len(out) >= limit:
            break
    return out


def obstruction_report(datum: OrbitDatum, witnesses=None, extra_values=()) -> dict:
    """Machine-readable obstruction block.

    ``extra_values`` are (label, theta value, certifies) triples computed
    outside the generic path (e.g. a closed-form evaluation).
    """
    if witnesses is None:
        witnesses = default_witnesses(datum)
    ws = witness_report(datum, witnesses)
    f = infinitesimal_obstruction(datum)
    ext = extension_data(datum)
    comparison = class_comparison(datum)
    trivial = bool(co.is_coboundary(f))
    values = [(w.label, w.value, w.exact, w.certifies_class) for w in ws]
    values += [(lab, v, np.asarray(v).dtype == object, cert) for lab, v, cert in extra_values]
    nonzero = [(lab, v, cert) for lab, v, ex, cert in values if _nonzero(v)]
    if not nonzero:
        if datum.a_vanishes_on_k:
            status = "vanishes (a|k = 0 choice)"
        else:
            status = "vanishes at all witnesses"
    elif any(cert for _, _, cert in nonzero):
        lab = next(lab for lab, _, cert in nonzero if cert)
        status = f"nontrivial class (certified at witness {lab})"
    else:
        lab = nonzero[0][0]
        status = f"nonvanishing (witness {lab})"
    return {
        "dim_g": datum.alg.dim,
        "dim_n": datum.ideal.dim,
        "dim_k": datum.k.dim,
        "dim_l": datum.l.dim,
        "dim_j": datum.j.dim,
        "a_vanishes_on_k": datum.a_vanishes_on_k,
        "a_check": datum.a_check,
        "a_on_k": datum.a_on_k,
        "extension_dims": ext.dims,
        "extension_exact": ext.is_exact,
        "infinitesimal_class": "trivial" if trivial else "nontrivial",
        "f": f.matrix,
        "f_ext": ext.cocycle.matrix,
        "f_minus_f_ext_is_coboundary": bool(comparison),
        "symplectic_obstruction": status,
        "theta_witnesses": [
            {"witness": lab, "value": v, "exact": ex, "certifies_class": cert} for lab, v, ex, cert in values
        ],
    }


def _nonzero(v, tol: float = NUMERIC_TOL) -> bool:
    v = np.asarray(v)
    if v.dtype == object:
        return not la.is_zero(v)
    return bool(np.abs(v).max(initial=0.0) > tol)
