"""Hilbert-Kunz and Hilbert-Samuel functions and multiplicities, plus the
F-rational-signature searches built on them.

All lengths are exact integers and all normalized values exact fractions;
decimals are derived views.  The Hilbert-Kunz error bound reported here is
the empirical quantity 2*D_hat/p^e_max with

    D_hat = max_e  p^e * |normalized(e+1) - normalized(e)|,

an observable stand-in for the uniform-convergence constant whose
existence the underlying theory guarantees without giving an algorithm.
It is labeled heuristic in every output and never asserted as rigorous.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from . import linalg
from .coeff import Field, FieldElement
from .errors import ValidationError
from .groebner import (
    INFINITE,
    GroebnerBasis,
    _primary_witness,
    buchberger,
    colength,
)
from .polyring import IdealPresentation, Polynomial, PolynomialRing, frobenius_power, ordinary_power


class QuotientRingSpec:
    """Ambient polynomial ring modulo a (possibly zero) defining ideal."""

    def __init__(self, ring: PolynomialRing, defining=()):
        self.ring = ring
        self.defining = tuple(defining)
        for g in self.defining:
            if g.ring != ring:
                raise ValidationError("defining generator from a different ring")
            if g.is_zero():
                raise ValidationError("zero generator in defining ideal")
        self._gb = None
        self._dim = None
        if self.defining:
            gb = self.defining_gb()
            if gb.is_unit_ideal():
                raise ValidationError("defining ideal is the unit ideal")

    def defining_gb(self) -> GroebnerBasis | None:
        """Reduced basis of the defining ideal; None when it is zero."""
        if not self.defining:
            return None
        if self._gb is None:
            self._gb = buchberger(IdealPresentation(self.ring, self.defining))
        return self._gb

    @property
    def dimension(self) -> int:
        if self._dim is None:
            self._dim = krull_dimension(self)
        return self._dim

    def __repr__(self):
        if not self.defining:
            return repr(self.ring)
        return f"{self.ring!r}/{list(self.defining)!r}"


def krull_dimension(R: QuotientRingSpec) -> int:
    """Krull dimension of the quotient: the largest number of variables
    spanning a coordinate subspace avoided by every leading monomial of
    the defining ideal (combinatorial dimension of the initial ideal)."""
    n = R.ring.nvars
    gb = R.defining_gb()
    if gb is None:
        return n
    leads = gb.leading_exponents()
    supports = [frozenset(i for i, e in enumerate(exps) if e) for exps in leads]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    return 0


@dataclass(frozen=True)
class HKSample:
    """One row of the Hilbert-Kunz function."""

    e: int
    q: int
    length: int
    normalized: Fraction

    @property
    def decimal(self) -> float:
        return float(self.normalized)


@dataclass(frozen=True)
class HKEstimate:
    """Limit estimate from the last sample plus the empirical error bound."""

    value: Fraction
    d_hat: Fraction
    error_bound: Fraction
    samples: tuple

    @property
    def decimal(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class HSSample:
    n: int
    length: int


@dataclass(frozen=True)
class HSEstimate:
    dimension: int
    multiplicity: int
    window: tuple  # n-range of the stabilized d-th differences
    samples: tuple


def _combined_gens(R: QuotientRingSpec, I: IdealPresentation):
    if I.ring != R.ring:
        raise ValidationError("ideal and quotient ring live in different rings")
    return tuple(R.defining) + tuple(I.generators)


def hk_sample_gb(R: QuotientRingSpec, I: IdealPresentation, q: int) -> GroebnerBasis:
    """Groebner basis of defining + I^[q] in the ambient ring."""
    bracket = frobenius_power(I, q)
    return buchberger(IdealPresentation(R.ring, tuple(R.defining) + bracket.generators))


def hk_function(R: QuotientRingSpec, I: IdealPresentation, e_max: int, threads: int = 1):
    """Hilbert-Kunz samples for e = 1..e_max.

    Lengths are colengths of defining + I^[p^e]; the e = 1 stage also
    validates zero-dimensionality and primality to the origin (trusted for
    larger e afterwards).  Samples normalize by q^d with d the dimension
    of the quotient ring itself.
    """
    if e_max < 1:
        raise ValidationError(f"e_max must be >= 1: {e_max}")
    p = R.ring.domain.characteristic
    if not p:
        raise ValidationError("Hilbert-Kunz functions need positive characteristic")
    _combined_gens(R, I)
    d = R.dimension

    def sample(e: int) -> HKSample:
        q = p**e
        gb = hk_sample_gb(R, I, q)
        length = colength(gb)
        if length is INFINITE:
            raise ValidationError(
                f"ideal is not zero-dimensional at q = {q}; Hilbert-Kunz undefined"
            )
        if e == 1:
            witness = _primary_witness(gb)
            if witness is not None:
                raise ValidationError(
                    f"ideal is not primary to the origin: {witness!r} has a power "
                    "with nonzero normal form"
                )
        return HKSample(e=e, q=q, length=length, normalized=Fraction(length, q**d))

    exponents = range(1, e_max + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            samples = list(pool.map(sample, exponents))
    else:
        samples = [sample(e) for e in exponents]
    return samples


def hk_estimate(samples) -> HKEstimate:
    """Estimate the limit from a sample list (>= 2 samples required)."""
    samples = tuple(samples)
    if len(samples) < 2:
        raise ValidationError("Hilbert-Kunz estimation needs at least 2 samples")
    d_hat = Fraction(0)
    for a, b in zip(samples, samples[1:]):
        d_hat = max(d_hat, a.q * abs(b.normalized - a.normalized))
    error = Fraction(2) * d_hat / samples[-1].q
    return HKEstimate(
        value=samples[-1].normalized, d_hat=d_hat, error_bound=error, samples=samples
    )


def hs_function(R: QuotientRingSpec, I: IdealPresentation, n_max: int):
    """Hilbert-Samuel samples: lengths of defining + I^n for n = 1..n_max."""
    if n_max < 1:
        raise ValidationError(f"n_max must be >= 1: {n_max}")
    _combined_gens(R, I)
    samples = []
    for n in range(1, n_max + 1):
        power = I if n == 1 else ordinary_power(I, n)
        gb = buchberger(IdealPresentation(R.ring, tuple(R.defining) + power.generators))
        length = colength(gb)
        if length is INFINITE:
            raise ValidationError("ideal is not zero-dimensional; Hilbert-Samuel undefined")
        samples.append(HSSample(n=n, length=length))
    return samples


def hs_multiplicity(samples, d: int, window: int = 3) -> HSEstimate:
    """Hilbert-Samuel multiplicity as the stabilized d-th finite difference.

    Stability means `window` consecutive equal d-th differences; without
    stabilization the sample range was too short (increase n_max).
    """
    samples = tuple(samples)
    if len(samples) < d + window:
        raise ValidationError(f"need at least d + {window} = {d + window} samples")
    values = [s.length for s in samples]
    for _ in range(d):
        values = [b - a for a, b in zip(values, values[1:])]
    for i in range(len(values) - window + 1):
        if all(values[i + k] == values[i] for k in range(window)):
            return HSEstimate(
                dimension=d,
                multiplicity=values[i],
                window=(samples[i].n, samples[i + window - 1].n),
                samples=samples,
            )
    raise ValidationError(
        "d-th finite differences did not stabilize; increase n_max "
        f"(differences seen: {values})"
    )


def socle_basis(R: QuotientRingSpec, x: IdealPresentation):
    """Polynomials whose residues form a basis of the socle
    ((defining + (x)) : m) / (defining + (x)), for a system of parameters x."""
    d = R.dimension
    if len(x.generators) != d:
        raise ValidationError(
            f"not a system of parameters: {len(x.generators)} generators for "
            f"dimension {d}"
        )
    ring = R.ring
    gens = _combined_gens(R, x)
    gb = buchberger(IdealPresentation(ring, gens))
    if colength(gb) is INFINITE:
        raise ValidationError("parameter ideal is not zero-dimensional")
    if colength(gb) == 0:
        raise ValidationError("parameter ideal is the unit ideal; socle is empty")
    witness = _primary_witness(gb)
    if witness is not None:
        raise ValidationError(
            f"parameter ideal is not primary to the origin (witness {witness!r})"
        )
    field = ring.domain
    smb = gb.standard_monomials()
    index = {m.key: i for i, m in enumerate(smb)}
    n = len(smb)
    stacked = []
    for i in range(ring.nvars):
        exps = tuple(1 if j == i else 0 for j in range(ring.nvars))
        var_key = ring.encode(exps)
        cols = []
        for m in smb:
            nf = gb.normal_form(Polynomial(ring, ((m.key + var_key, field.one),)))
            vec = [field.zero] * n
            for k, c in nf._terms:
                vec[index[k]] = c
            cols.append(vec)
        for r in range(n):
            stacked.append([cols[c][r] for c in range(n)])
    kernel = linalg.kernel_basis(field, stacked, n)
    basis = []
    for vec in kernel:
        terms = [(smb[i].key, v) for i, v in enumerate(vec) if not field.is_zero(v)]
        basis.append(ring.polynomial(terms))
    return basis


@dataclass(frozen=True)
class RSigRow:
    coefficients: tuple  # coordinates of u over the socle basis
    u: Polynomial
    ehk_x: HKEstimate
    ehk_xu: HKEstimate
    difference: Fraction


@dataclass(frozen=True)
class RSigResult:
    sop: IdealPresentation
    socle: tuple
    rows: tuple
    minimum: Fraction
    argmin: RSigRow


def _grid_default(field: Field):
    if field.size is None or field.size > 64:
        raise ValidationError(
            "coefficient grid required: field is infinite or has more than 64 elements"
        )
    return [FieldElement(field, raw) for raw in field.elements()]


def rsig_search(
    R: QuotientRingSpec,
    x: IdealPresentation,
    coefficient_grid=None,
    e_max: int = 2,
    threads: int = 1,
) -> RSigResult:
    """Search for the F-rational signature over socle candidates.

    Candidates follow the two affine charts of the attained-minimum
    argument: socle coordinates (c_1, ..., c_(N-1), 1) and
    (1, c_2, ..., c_N) with c_i drawn from the grid.  The reported
    minimum is an upper bound for the true infimum (a finite grid cannot
    certify more); by the attainment result the infimum is achieved at
    some socle element.
    """
    field = R.ring.domain
    socle = socle_basis(R, x)
    N = len(socle)
    if coefficient_grid is None:
        grid = _grid_default(field)
    else:
        grid = [field(c) for c in coefficient_grid]
    if N > 1 and not grid:
        raise ValidationError("empty coefficient grid with more than one socle element")

    vectors = []
    seen = set()
    one = field(1)
    if N == 1:
        vectors.append((one,))
    else:
        for combo in product(grid, repeat=N - 1):
            vec = tuple(combo) + (one,)
            if vec not in seen:
                seen.add(vec)
                vectors.append(vec)
        for combo in product(grid, repeat=N - 1):
            vec = (one,) + tuple(combo)
            if vec not in seen:
                seen.add(vec)
                vectors.append(vec)

    ehk_x = hk_estimate(hk_function(R, x, e_max, threads=threads))

    def evaluate(vec):
        u = R.ring.zero
        for c, s in zip(vec, socle):
            u = u + s * c
        xu = IdealPresentation(R.ring, tuple(x.generators) + (u,))
        est = hk_estimate(hk_function(R, xu, e_max))
        return RSigRow(
            coefficients=vec,
            u=u,
            ehk_x=ehk_x,
            ehk_xu=est,
            difference=ehk_x.value - est.value,
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(evaluate, vectors))
    else:
        rows = [evaluate(vec) for vec in vectors]
    best = min(range(len(rows)), key=lambda i: (rows[i].difference, i))
    return RSigResult(
        sop=x,
        socle=tuple(socle),
        rows=tuple(rows),
        minimum=rows[best].difference,
        argmin=rows[best],
    )


@dataclass(frozen=True)
class CSigRow:
    index: int
    candidate: IdealPresentation
    ehk_x: HKEstimate
    ehk_candidate: HKEstimate | None
    colength_x: int
    colength_candidate: int
    denominator: int
    ratio: Fraction | None
    skipped: bool


@dataclass(frozen=True)
class CSigResult:
    sop: IdealPresentation
    rows: tuple
    minimum: Fraction | None
    warnings: tuple = field(default_factory=tuple)


def csig_search(
    R: QuotientRingSpec,
    x: IdealPresentation,
    candidate_ideals,
    e_max: int = 2,
    threads: int = 1,
) -> CSigResult:
    """Relative-signature ratios over a list of candidate ideals containing
    the parameter ideal; exact colengths in the denominator, Hilbert-Kunz
    estimates in the numerator."""
    ring = R.ring
    gb_x = buchberger(IdealPresentation(ring, _combined_gens(R, x)))
    len_x = colength(gb_x)
    if len_x is INFINITE:
        raise ValidationError("parameter ideal is not zero-dimensional")
    ehk_x = hk_estimate(hk_function(R, x, e_max, threads=threads))
    rows = []
    warnings = []
    minimum = None
    for idx, cand in enumerate(candidate_ideals):
        gb_c = buchberger(IdealPresentation(ring, _combined_gens(R, cand)))
        for g in x.generators:
            if gb_c.normal_form(g):
                raise ValidationError(
                    f"candidate #{idx} does not contain the parameter ideal "
                    f"(generator {g!r} has nonzero normal form)"
                )
        len_c = colength(gb_c)
        denom = len_x - len_c
        if denom == 0:
            warnings.append(
                f"candidate #{idx} skipped: equal colength {len_x} (zero denominator)"
            )
            rows.append(
                CSigRow(
                    index=idx,
                    candidate=cand,
                    ehk_x=ehk_x,
                    ehk_candidate=None,
                    colength_x=len_x,
                    colength_candidate=len_c,
                    denominator=0,
                    ratio=None,
                    skipped=True,
                )
            )
            continue
        est = hk_estimate(hk_function(R, cand, e_max))
        ratio = (ehk_x.value - est.value) / denom
        rows.append(
            CSigRow(
                index=idx,
                candidate=cand,
                ehk_x=ehk_x,
                ehk_candidate=est,
                colength_x=len_x,
                colength_candidate=len_c,
                denominator=denom,
                ratio=ratio,
                skipped=False,
            )
        )
        if minimum is None or ratio < minimum:
            minimum = ratio
    return CSigResult(sop=x, rows=tuple(rows), minimum=minimum, warnings=tuple(warnings))
