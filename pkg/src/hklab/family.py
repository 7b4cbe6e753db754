"""Parametric families of ideals over F_p[t_1..t_k] or Z, their fibers,
and the sweep drivers that exercise the semicontinuity, monotonicity,
uniform-bound, and reduction-mod-p statements on sampled fibers.

A family stores its generators as polynomials in ambient variables whose
coefficients are parameter polynomials (internally: polynomials in
ambient + parameter variables over F_p, or over Z for the integer base).
Specialization substitutes a parameter assignment (special fiber), the
transcendental generator of F_p(t) (generic fiber, one parameter), or
reduces integer coefficients mod p (fiber of the Z-family).

Verdicts are pure functions of the computed row tables, so a saved table
reproduces its verdict; sampled fibers give evidence for the statements,
never proofs, and every FAIL names its witnessing (fiber, e) pair.

The affine-family axioms themselves (equidimensionality conditions) are
not machine-checked; the computable proxies are finite colength and
primality to the origin per fiber, plus a warning when fiber dimensions
disagree.  Probes that lean on the uniform-convergence theorem require
`assume_reduced=True`, acknowledging the reduced-fibers hypothesis that
the code does not verify.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import (
    FieldElement,
    PrimeField,
    RationalFunctionField,
    is_prime,
)
from .errors import StructuralError, ValidationError
from .multiplicity import (
    HKEstimate,
    QuotientRingSpec,
    hk_estimate,
    hk_function,
    hs_function,
)
from .polyring import IdealPresentation, IntegerDomain, Polynomial, PolynomialRing


class FamilySpec:
    """A parametric defining ideal and family ideal over a base ring."""

    def __init__(self, base_kind, variables, defining, ideal, p=None, parameters=()):
        if base_kind not in ("param", "integers"):
            raise ValidationError(f"unknown family base kind {base_kind!r}")
        self.base_kind = base_kind
        self.variables = tuple(variables)
        self.parameters = tuple(parameters)
        if base_kind == "integers":
            if self.parameters:
                raise ValidationError("integer-base families take no parameters")
            self.p = None
            domain = IntegerDomain()
        else:
            if p is None:
                raise ValidationError("parameter-base families need a characteristic p")
            self.p = p
            domain = PrimeField(p)
        overlap = set(self.variables) & set(self.parameters)
        if overlap:
            raise ValidationError(f"parameters and variables overlap: {sorted(overlap)}")
        # internal parse ring: ambient variables first, then parameters
        self._ring = PolynomialRing(domain, self.variables + self.parameters)
        self.defining = tuple(self._parse_all(defining))
        self.ideal = tuple(self._parse_all(ideal))
        if not self.ideal:
            raise ValidationError("family ideal needs at least one generator")
        for g in self.defining + self.ideal:
            if g.is_zero():
                raise ValidationError("zero generator in family")

    def _parse_all(self, gens):
        out = []
        for g in gens:
            out.append(self._ring.parse(g) if isinstance(g, str) else g)
        return out

    def __repr__(self):
        base = "ZZ" if self.base_kind == "integers" else f"GF({self.p})[{','.join(self.parameters)}]"
        return f"FamilySpec({base} -> vars {self.variables})"

    @classmethod
    def from_config(cls, cfg: dict) -> "FamilySpec":
        base = cfg.get("base")
        if not isinstance(base, dict) or "kind" not in base:
            raise ValidationError("family config needs base.kind")
        for key in ("vars", "ideal"):
            if key not in cfg:
                raise ValidationError(f"family config is missing {key!r}")
        if base["kind"] == "integers":
            return cls(
                "integers",
                cfg["vars"],
                cfg.get("defining", ()),
                cfg["ideal"],
            )
        if base["kind"] == "param":
            if "p" not in base:
                raise ValidationError("parameter-base family config needs base.p")
            return cls(
                "param",
                cfg["vars"],
                cfg.get("defining", ()),
                cfg["ideal"],
                p=base["p"],
                parameters=base.get("params", ()),
            )
        raise ValidationError(f"unknown base kind {base['kind']!r}")


class FiberSpec:
    """A point of the family base: SPECIAL values, GENERIC, or PRIME(p)."""

    def __init__(self, kind, assignments=None, prime=None, extension_degree=1):
        if kind not in ("special", "generic", "prime"):
            raise ValidationError(f"unknown fiber kind {kind!r}")
        self.kind = kind
        self.assignments = dict(assignments or {})
        self.prime = prime
        self.extension_degree = extension_degree
        if kind == "prime":
            if prime is None or not is_prime(prime):
                raise ValidationError(f"PRIME fiber needs a prime number: {prime!r}")

    @classmethod
    def special(cls, **assignments) -> "FiberSpec":
        return cls("special", assignments=assignments)

    @classmethod
    def generic(cls) -> "FiberSpec":
        return cls("generic")

    @classmethod
    def at_prime(cls, p: int) -> "FiberSpec":
        return cls("prime", prime=p)

    @property
    def label(self) -> str:
        if self.kind == "generic":
            return "generic"
        if self.kind == "prime":
            return f"p={self.prime}"
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.assignments.items()))
        return inner or "special"

    def __repr__(self):
        return f"FiberSpec({self.label})"


def specialize_fiber(F: FamilySpec, fiber: FiberSpec):
    """Substitute a fiber's point into the family.

    Returns (QuotientRingSpec, IdealPresentation) over the fiber field.
    Family-ideal generators that specialize to zero are dropped; a
    defining-ideal generator specializing to zero degenerates the fiber
    ring and is an error (dimension jumps would corrupt normalization).
    """
    if F.base_kind == "integers":
        if fiber.kind != "prime":
            raise ValidationError("integer-base families only have PRIME fibers")
        target = PrimeField(fiber.prime)

        def convert(coeff_raw):
            return coeff_raw % fiber.prime

        assignment_raws = {}
    else:
        if fiber.kind == "prime":
            raise ValidationError("PRIME fibers require an integer-base family")
        if fiber.kind == "generic":
            if len(F.parameters) != 1:
                raise ValidationError(
                    "GENERIC fibers are supported for exactly one parameter"
                )
            target = RationalFunctionField(PrimeField(F.p), var=F.parameters[0])
            assignment_raws = {F.parameters[0]: target.t}
        else:
            missing = set(F.parameters) - set(fiber.assignments)
            if missing:
                raise ValidationError(f"fiber assigns no value to {sorted(missing)}")
            extra = set(fiber.assignments) - set(F.parameters)
            if extra:
                raise ValidationError(f"fiber assigns unknown parameters {sorted(extra)}")
            target = None
            values = {}
            for name, value in fiber.assignments.items():
                if isinstance(value, FieldElement):
                    values[name] = value
                    if target is None:
                        target = value.field
                    elif target != value.field:
                        raise StructuralError("fiber values from different fields")
            if target is None:
                target = PrimeField(F.p)
            if target.characteristic != F.p:
                raise ValidationError(
                    f"fiber field has characteristic {target.characteristic}, family has {F.p}"
                )
            for name, value in fiber.assignments.items():
                if not isinstance(value, FieldElement):
                    values[name] = target(value)
            assignment_raws = {k: v.raw for k, v in values.items()}

        def convert(coeff_raw):
            return target.from_int(coeff_raw)

    fiber_ring = PolynomialRing(target, F.variables)
    nvars = len(F.variables)

    def substitute(g: Polynomial) -> Polynomial:
        acc = {}
        src = F._ring
        for key, coeff in g._terms:
            exps = src.decode(key)
            ambient = exps[:nvars]
            value = convert(coeff)
            for pname, pexp in zip(F.parameters, exps[nvars:]):
                if pexp:
                    value = target.mul(value, target.pow(assignment_raws[pname], pexp))
            new_key = fiber_ring.encode(ambient)
            prev = acc.get(new_key)
            acc[new_key] = value if prev is None else target.add(prev, value)
        terms = tuple(
            (k, c) for k, c in sorted(acc.items(), reverse=True) if not target.is_zero(c)
        )
        return Polynomial(fiber_ring, terms)

    defining = []
    for g in F.defining:
        s = substitute(g)
        if s.is_zero():
            raise ValidationError(
                f"degenerate fiber {fiber.label}: defining generator {g!r} specializes to zero"
            )
        defining.append(s)
    ideal_gens = []
    for g in F.ideal:
        s = substitute(g)
        if s.is_zero():
            continue
        ideal_gens.append(s)
    if not ideal_gens:
        raise ValidationError(
            f"degenerate fiber {fiber.label}: every family-ideal generator specializes to zero"
        )
    return QuotientRingSpec(fiber_ring, defining), IdealPresentation(fiber_ring, ideal_gens)


@dataclass(frozen=True)
class HKFiberRow:
    label: str
    dimension: int
    samples: tuple  # HKSample
    estimate: HKEstimate


@dataclass(frozen=True)
class HSFiberRow:
    label: str
    dimension: int
    samples: tuple  # HSSample


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    details: str
    witnesses: tuple = ()


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    verdicts: dict
    warnings: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts.values())


def _require_one_generic(fibers):
    generics = [f for f in fibers if f.kind == "generic"]
    if len(generics) != 1:
        raise ValidationError(
            f"sweep needs exactly one GENERIC fiber, found {len(generics)}"
        )


def hk_family_rows(F: FamilySpec, fibers, e_max: int, threads: int = 1):
    """Hilbert-Kunz sample rows for each fiber, in the given fiber order."""

    def one(fiber: FiberSpec) -> HKFiberRow:
        R, I = specialize_fiber(F, fiber)
        samples = tuple(hk_function(R, I, e_max))
        est = hk_estimate(samples) if len(samples) >= 2 else None
        return HKFiberRow(
            label=fiber.label, dimension=R.dimension, samples=samples, estimate=est
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = tuple(pool.map(one, fibers))
    else:
        rows = tuple(one(f) for f in fibers)
    return rows


def _dimension_warnings(rows):
    dims = {row.label: row.dimension for row in rows}
    if len(set(dims.values())) > 1:
        return (f"fiber dimensions disagree: {dims}",)
    return ()


def verdict_term_semicontinuity(rows) -> Verdict:
    """PASS iff generic lengths are <= every special fiber's, term by term."""
    generic = next((r for r in rows if r.label == "generic"), None)
    if generic is None:
        raise ValidationError("term semicontinuity verdict needs a generic row")
    witnesses = []
    for row in rows:
        if row.label == "generic":
            continue
        for gs, ss in zip(generic.samples, row.samples):
            if gs.length > ss.length:
                witnesses.append((row.label, gs.e))
    if witnesses:
        return Verdict(
            name="term_semicontinuity",
            passed=False,
            details="generic length exceeds a special length at "
            + ", ".join(f"(fiber {l}, e={e})" for l, e in witnesses),
            witnesses=tuple(witnesses),
        )
    return Verdict(
        name="term_semicontinuity",
        passed=True,
        details="generic length <= special length for every sampled e",
    )


def verdict_hk_monotonicity(rows) -> Verdict:
    """PASS iff the generic estimate is <= each special estimate plus the
    combined empirical error bounds."""
    generic = next((r for r in rows if r.label == "generic"), None)
    if generic is None:
        raise ValidationError("monotonicity verdict needs a generic row")
    witnesses = []
    for row in rows:
        if row.label == "generic":
            continue
        slack = generic.estimate.error_bound + row.estimate.error_bound
        if generic.estimate.value > row.estimate.value + slack:
            witnesses.append((row.label, row.samples[-1].e))
    if witnesses:
        return Verdict(
            name="hk_monotonicity",
            passed=False,
            details="generic estimate exceeds special estimate + bounds at "
            + ", ".join(f"(fiber {l}, e={e})" for l, e in witnesses),
            witnesses=tuple(witnesses),
        )
    return Verdict(
        name="hk_monotonicity",
        passed=True,
        details="generic estimate <= special estimates within combined error bounds",
    )


def term_semicontinuity_check(F: FamilySpec, fibers, e_max: int, threads: int = 1) -> SweepResult:
    """Per-term semicontinuity check across fibers (one GENERIC required)."""
    _require_one_generic(fibers)
    rows = hk_family_rows(F, fibers, e_max, threads=threads)
    return SweepResult(
        rows=rows,
        verdicts={"term_semicontinuity": verdict_term_semicontinuity(rows)},
        warnings=_dimension_warnings(rows),
    )


def hk_monotonicity_check(F: FamilySpec, fibers, e_max: int, threads: int = 1) -> SweepResult:
    """Limit-estimate monotonicity check across fibers (one GENERIC required)."""
    _require_one_generic(fibers)
    if e_max < 2:
        raise ValidationError("monotonicity check needs e_max >= 2 for estimates")
    rows = hk_family_rows(F, fibers, e_max, threads=threads)
    return SweepResult(
        rows=rows,
        verdicts={"hk_monotonicity": verdict_hk_monotonicity(rows)},
        warnings=_dimension_warnings(rows),
    )


def hk_sweep(F: FamilySpec, fibers, e_max: int, checks=("term_semicontinuity", "hk_monotonicity"),
             threads: int = 1) -> SweepResult:
    """Run several Hilbert-Kunz verdicts on one shared row table."""
    _require_one_generic(fibers)
    if "hk_monotonicity" in checks and e_max < 2:
        raise ValidationError("monotonicity check needs e_max >= 2 for estimates")
    rows = hk_family_rows(F, fibers, e_max, threads=threads)
    verdict_fns = {
        "term_semicontinuity": verdict_term_semicontinuity,
        "hk_monotonicity": verdict_hk_monotonicity,
    }
    verdicts = {}
    for name in checks:
        if name not in verdict_fns:
            raise ValidationError(f"unknown check {name!r}")
        verdicts[name] = verdict_fns[name](rows)
    return SweepResult(rows=rows, verdicts=verdicts, warnings=_dimension_warnings(rows))


def hs_family_rows(F: FamilySpec, fibers, n_max: int, threads: int = 1):
    def one(fiber: FiberSpec) -> HSFiberRow:
        R, I = specialize_fiber(F, fiber)
        samples = tuple(hs_function(R, I, n_max))
        return HSFiberRow(label=fiber.label, dimension=R.dimension, samples=samples)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return tuple(pool.map(one, fibers))
    return tuple(one(f) for f in fibers)


def verdict_hs_lex(rows) -> Verdict:
    """PASS iff the generic Hilbert-Samuel tuple is lex-<= every special one."""
    generic = next((r for r in rows if r.label == "generic"), None)
    if generic is None:
        raise ValidationError("Hilbert-Samuel verdict needs a generic row")
    gtuple = tuple(s.length for s in generic.samples)
    witnesses = []
    for row in rows:
        if row.label == "generic":
            continue
        stuple = tuple(s.length for s in row.samples)
        if gtuple > stuple:  # tuple comparison is lexicographic
            # witness: first index where generic exceeds
            for i, (g, s) in enumerate(zip(gtuple, stuple)):
                if g != s:
                    witnesses.append((row.label, i + 1))
                    break
    if witnesses:
        return Verdict(
            name="hs_lex_semicontinuity",
            passed=False,
            details="generic Hilbert-Samuel tuple is lex-greater at "
            + ", ".join(f"(fiber {l}, n={n})" for l, n in witnesses),
            witnesses=tuple(witnesses),
        )
    return Verdict(
        name="hs_lex_semicontinuity",
        passed=True,
        details="generic Hilbert-Samuel tuple is lex-<= every special tuple",
    )


def hs_family_sweep(F: FamilySpec, fibers, n_max: int, threads: int = 1) -> SweepResult:
    """Lexicographic Hilbert-Samuel comparison of generic vs special fibers."""
    _require_one_generic(fibers)
    rows = hs_family_rows(F, fibers, n_max, threads=threads)
    return SweepResult(
        rows=rows,
        verdicts={"hs_lex_semicontinuity": verdict_hs_lex(rows)},
        warnings=_dimension_warnings(rows),
    )


@dataclass(frozen=True)
class ModpRow:
    label: str
    prime: int
    dimension: int
    samples: tuple
    estimate: HKEstimate
    deltas: tuple  # |normalized(e+1) - normalized(e)| as Fractions
    p_deltas: tuple  # p * delta


@dataclass(frozen=True)
class ModpResult:
    rows: tuple
    per_e_bounds: tuple  # max_p of p*delta_p(e), for e = 1..e_max-1
    overall_bound: Fraction | None
    verdicts: dict
    warnings: tuple

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts.values())


def modp_sweep(F: FamilySpec, primes, e_max: int, assume_reduced: bool = False,
               threads: int = 1) -> ModpResult:
    """Reduction-mod-p table for an integer-base family.

    Reports delta_p(e) = |normalized(p, e+1) - normalized(p, e)| and the
    products p * delta_p(e); the uniform-convergence statement predicts a
    bound for the products across p at fixed e, so the table prints the
    observed maxima without asserting them against any rigorous constant.
    Degenerate primes are skipped with a warning.
    """
    if F.base_kind != "integers":
        raise ValidationError("mod-p sweeps need an integer-base family")
    if not assume_reduced:
        raise ValidationError(
            "mod-p sweeps rest on the reduced-fibers hypothesis; pass "
            "assume_reduced=True to acknowledge it"
        )
    if e_max < 2:
        raise ValidationError("mod-p sweeps need e_max >= 2 to form differences")

    def one(p: int):
        fiber = FiberSpec.at_prime(p)
        try:
            R, I = specialize_fiber(F, fiber)
        except ValidationError as err:
            return f"prime {p} skipped: {err}"
        samples = tuple(hk_function(R, I, e_max))
        est = hk_estimate(samples)
        deltas = tuple(
            abs(b.normalized - a.normalized) for a, b in zip(samples, samples[1:])
        )
        return ModpRow(
            label=fiber.label,
            prime=p,
            dimension=R.dimension,
            samples=samples,
            estimate=est,
            deltas=deltas,
            p_deltas=tuple(p * d for d in deltas),
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(one, primes))
    else:
        outcomes = [one(p) for p in primes]
    rows = tuple(r for r in outcomes if isinstance(r, ModpRow))
    warnings = tuple(r for r in outcomes if isinstance(r, str))
    warnings += _dimension_warnings(rows)
    per_e = []
    for i in range(e_max - 1):
        per_e.append(max((row.p_deltas[i] for row in rows), default=None))
    overall = max((b for b in per_e if b is not None), default=None)
    passed = bool(rows) and len(rows) == len(list(primes))
    details = (
        f"observed common bound max_p p*delta = {overall}"
        if overall is not None
        else "no differences observed"
    )
    verdict = Verdict(
        name="modp_bounded",
        passed=passed and overall is not None,
        details=details,
        witnesses=tuple(w for w in warnings),
    )
    return ModpResult(
        rows=rows,
        per_e_bounds=tuple(per_e),
        overall_bound=overall,
        verdicts={"modp_bounded": verdict},
        warnings=warnings,
    )


@dataclass(frozen=True)
class UniformBoundReport:
    hk_rows: tuple
    hs_rows: tuple
    c_hat: Fraction
    d_hat: Fraction
    verdicts: dict
    warnings: tuple

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts.values())


def uniform_bound_probe(F: FamilySpec, fibers, e_max: int, n_max: int,
                        assume_reduced: bool = False, threads: int = 1) -> UniformBoundReport:
    """Empirical probes for the uniform constants:

    C_hat = max over fibers and n of length / n^d (Hilbert-Samuel side),
    D_hat = max over fibers and e of p^e * |Delta_e| (Hilbert-Kunz side).

    PASS means both maxima exist and are finite on the sampled fibers; the
    constants themselves are existential in the underlying theory.
    """
    if not assume_reduced:
        raise ValidationError(
            "uniform-bound probes rest on the reduced-fibers hypothesis; pass "
            "assume_reduced=True to acknowledge it"
        )
    if e_max < 2:
        raise ValidationError("uniform-bound probe needs e_max >= 2")
    hk_rows = hk_family_rows(F, fibers, e_max, threads=threads)
    hs_rows = hs_family_rows(F, fibers, n_max, threads=threads)
    d_hat = Fraction(0)
    for row in hk_rows:
        d_hat = max(d_hat, row.estimate.d_hat)
    c_hat = Fraction(0)
    for row in hs_rows:
        d = row.dimension
        for s in row.samples:
            c_hat = max(c_hat, Fraction(s.length, s.n**d))
    verdict = Verdict(
        name="uniform_bounds_finite",
        passed=True,
        details=f"C_hat = {c_hat} (lengths/n^d), D_hat = {d_hat} (p^e * |Delta_e|)",
    )
    return UniformBoundReport(
        hk_rows=hk_rows,
        hs_rows=hs_rows,
        c_hat=c_hat,
        d_hat=d_hat,
        verdicts={"uniform_bounds_finite": verdict},
        warnings=_dimension_warnings(hk_rows),
    )


def parse_fibers(F: FamilySpec, fiber_cfgs) -> list:
    """Fiber list from the JSON config form: {"generic": true},
    {"t": "0", ...} with optional "m" for GF(p^m) values, or
    {"primes": [...]} handled by the caller for mod-p sweeps."""
    from .coeff import make_extension

    fibers = []
    for cfg in fiber_cfgs:
        if not isinstance(cfg, dict):
            raise ValidationError(f"fiber entry must be an object: {cfg!r}")
        if cfg.get("generic"):
            fibers.append(FiberSpec.generic())
            continue
        m = cfg.get("m", 1)
        field = make_extension(F.p, m) if F.p is not None else None
        assignments = {}
        for key, value in cfg.items():
            if key in ("generic", "m"):
                continue
            if key not in F.parameters:
                raise ValidationError(f"fiber assigns unknown parameter {key!r}")
            if field is None:
                raise ValidationError("special fibers need a parameter-base family")
            assignments[key] = field(value) if isinstance(value, (str, int)) else value
        fibers.append(FiberSpec("special", assignments=assignments))
    return fibers
