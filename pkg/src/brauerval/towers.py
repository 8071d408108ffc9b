"""Iterated Laurent series towers and the elements we valuate inside them.

A tower is F_0((u_1))((u_2))...((u_n)) together with a list of certified
degree-p extension generators.  Elements are kept as formal sums of
Laurent monomials in named symbols; no series tails are ever needed
because every computation the verifier checks stays inside the subring
generated by finitely many monomials.

The valuation is the standard rank-n one: the value of a monomial is
read off the exponents of the active variables, and the outermost
variable is the most significant coordinate.  An element only gets a
value when exactly one "active part" realises the minimum, because
distinct residue-level monomials cannot cancel; anything else raises
AmbiguousValuation rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import (
    AmbiguousValuation,
    DimensionMismatch,
    UnsupportedConfiguration,
    ZeroElement,
)
from .lattices import Lattice, ValueVector

Monomial = tuple[tuple[str, int], ...]

ARTIN_SCHREIER = "artin-schreier"
PTH_ROOT = "pth-root"
COMPOSITE = "composite"

_KINDS = (ARTIN_SCHREIER, PTH_ROOT, COMPOSITE)
_JUSTIFICATIONS = (
    "ramified",
    "residue-laurent",
    "residue-generic",
    "residue-declared",
    "hypothesis",
)


def _merge_monomial(entries: list[tuple[str, int]]) -> Monomial:
    acc: dict[str, int] = {}
    for name, exp in entries:
        acc[name] = acc.get(name, 0) + exp
    return tuple(sorted((n, e) for n, e in acc.items() if e != 0))


@dataclass(frozen=True, slots=True)
class FormalElement:
    """Sum of coeff * monomial over the prime field F_char.

    terms are sorted by monomial and never carry a zero coefficient, so
    equal elements compare equal.  The representation knows nothing
    about towers; names are resolved where values are taken.
    """

    char: int
    terms: tuple[tuple[Monomial, int], ...]

    @staticmethod
    def _normal(char: int, raw: dict[Monomial, int]) -> FormalElement:
        terms = tuple(
            (m, c % char) for m, c in sorted(raw.items()) if c % char != 0
        )
        return FormalElement(char, terms)

    @staticmethod
    def zero(char: int) -> FormalElement:
        return FormalElement(char, ())

    @staticmethod
    def constant(char: int, value: int) -> FormalElement:
        return FormalElement._normal(char, {(): value})

    @staticmethod
    def one(char: int) -> FormalElement:
        return FormalElement.constant(char, 1)

    @staticmethod
    def monomial(char: int, names: dict[str, int], coeff: int = 1) -> FormalElement:
        m = _merge_monomial(list(names.items()))
        return FormalElement._normal(char, {m: coeff})

    @staticmethod
    def symbol(char: int, name: str, exp: int = 1, coeff: int = 1) -> FormalElement:
        return FormalElement.monomial(char, {name: exp}, coeff)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == (((), 1),)

    def names(self) -> frozenset[str]:
        return frozenset(n for m, _ in self.terms for n, _ in m)

    def _require_same_char(self, other: FormalElement) -> None:
        if self.char != other.char:
            raise UnsupportedConfiguration(
                f"characteristics {self.char} and {other.char} differ"
            )

    def __add__(self, other: FormalElement) -> FormalElement:
        self._require_same_char(other)
        acc: dict[Monomial, int] = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + c
        return FormalElement._normal(self.char, acc)

    def __neg__(self) -> FormalElement:
        return FormalElement(self.char, tuple((m, (-c) % self.char) for m, c in self.terms))

    def __sub__(self, other: FormalElement) -> FormalElement:
        return self + (-other)

    def __mul__(self, other: FormalElement) -> FormalElement:
        self._require_same_char(other)
        acc: dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = _merge_monomial(list(m1) + list(m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        return FormalElement._normal(self.char, acc)

    def scale(self, k: int) -> FormalElement:
        return FormalElement._normal(self.char, {m: c * k for m, c in self.terms})

    def inverse(self) -> FormalElement:
        """Inverse of a single-term element; sums have no monomial inverse."""
        if len(self.terms) != 1:
            raise UnsupportedConfiguration("only monomial elements can be inverted")
        m, c = self.terms[0]
        inv_m = tuple((n, -e) for n, e in m)
        return FormalElement(self.char, ((inv_m, pow(c, -1, self.char)),))

    def __pow__(self, k: int) -> FormalElement:
        base = self if k >= 0 else self.inverse()
        out = FormalElement.one(self.char)
        for _ in range(abs(k)):
            out = out * base
        return out

    def pow_p(self) -> FormalElement:
        """Frobenius: acts termwise, fixing prime-field coefficients."""
        return FormalElement(
            self.char,
            tuple(
                (tuple((n, e * self.char) for n, e in m), c) for m, c in self.terms
            ),
        )

    def substitute_monomial(self, old: str, new: str, exp_factor: int) -> FormalElement:
        """Rename old -> new^exp_factor inside every monomial."""
        acc: dict[Monomial, int] = {}
        for m, c in self.terms:
            entries = [
                (new, e * exp_factor) if n == old else (n, e) for n, e in m
            ]
            mm = _merge_monomial(entries)
            acc[mm] = acc.get(mm, 0) + c
        return FormalElement._normal(self.char, acc)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            factors = [f"{n}^{e}" if e != 1 else n for n, e in m]
            if not factors or c != 1:
                factors.insert(0, str(c))
            parts.append("*".join(factors))
        return " + ".join(parts)


def artin_schreier_image(e: FormalElement) -> FormalElement:
    """The additive map x -> x^p - x, taken termwise via Frobenius."""
    return e.pow_p() - e


@dataclass(frozen=True, slots=True)
class GroundField:
    """Residue-level base field F_0.

    constants are names of elements of F_0 treated as independent
    generics: no polynomial identity over the prime field is assumed to
    hold between them, so an Artin-Schreier equation with a nonconstant
    generic right hand side is certified irreducible.
    """

    characteristic: int
    constants: frozenset[str] = frozenset()
    algebraically_closed: bool = False

    def __post_init__(self) -> None:
        if self.characteristic < 2:
            raise UnsupportedConfiguration("ground characteristic must be a prime p >= 2")


@dataclass(frozen=True, slots=True)
class ExtensionGenerator:
    """A certified degree-p element adjoined on top of a tower.

    kind artin-schreier: gen^p - gen = rhs
    kind pth-root:       gen^p = rhs
    kind composite:      gen^(p^2) - gen^p = rhs, value = v(rhs) / p^2

    justification records why the extension really has degree p (or p^2
    for composite): a ramified value, a residue-level Laurent value, a
    generic constant, a declared residue equation, or an explicit
    hypothesis the caller takes responsibility for.
    """

    name: str
    kind: str
    rhs: FormalElement
    justification: str
    residue_rhs: FormalElement | None = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise UnsupportedConfiguration(f"unknown generator kind {self.kind!r}")
        if self.justification not in _JUSTIFICATIONS:
            raise UnsupportedConfiguration(
                f"unknown justification {self.justification!r}"
            )


@dataclass(frozen=True, slots=True)
class FieldTower:
    """F_0((vars[0]))...((vars[-1])) with generators adjoined in order.

    variables run innermost first.  Each generator may reference ground
    constants, variables and strictly earlier generators in its rhs.
    """

    ground: GroundField
    variables: tuple[str, ...]
    generators: tuple[ExtensionGenerator, ...] = ()

    def __post_init__(self) -> None:
        seen = set(self.ground.constants)
        for name in self.variables + tuple(g.name for g in self.generators):
            if name in seen:
                raise UnsupportedConfiguration(f"name {name!r} reused in tower")
            seen.add(name)
        allowed = set(self.ground.constants) | set(self.variables)
        for g in self.generators:
            bad = g.rhs.names() - allowed
            if bad:
                raise UnsupportedConfiguration(
                    f"generator {g.name!r} references unknown names {sorted(bad)}"
                )
            allowed.add(g.name)

    @property
    def char(self) -> int:
        return self.ground.characteristic

    @property
    def depth(self) -> int:
        return len(self.variables)

    def generator(self, name: str) -> ExtensionGenerator:
        for g in self.generators:
            if g.name == name:
                return g
        raise UnsupportedConfiguration(f"no generator named {name!r}")

    def with_generator(self, gen: ExtensionGenerator) -> FieldTower:
        return FieldTower(self.ground, self.variables, self.generators + (gen,))

    def spec(self, depth: int | None = None) -> ValuationSpec:
        return ValuationSpec(self, self.depth if depth is None else depth)

    def element(self, names: dict[str, int], coeff: int = 1) -> FormalElement:
        return FormalElement.monomial(self.char, names, coeff)


@dataclass(frozen=True, slots=True)
class ValuationSpec:
    """The rank-depth valuation active on the outermost depth variables."""

    tower: FieldTower
    depth: int

    def __post_init__(self) -> None:
        if not 0 <= self.depth <= self.tower.depth:
            raise DimensionMismatch(
                f"depth {self.depth} outside tower of depth {self.tower.depth}"
            )

    @property
    def dim(self) -> int:
        return self.depth

    @property
    def active_variables(self) -> tuple[str, ...]:
        return self.tower.variables[self.tower.depth - self.depth :]

    @property
    def inactive_variables(self) -> tuple[str, ...]:
        return self.tower.variables[: self.tower.depth - self.depth]

    def variable_value(self, name: str) -> ValueVector:
        active = self.active_variables
        if name in active:
            return ValueVector.unit(self.depth, active.index(name))
        return ValueVector.zero(self.depth)

    def generator_value(self, name: str) -> ValueVector:
        return generator_value(self, name)

    def value_of(self, element: FormalElement) -> ValueVector:
        return value_of(element, self)

    def residue_of(self, element: FormalElement) -> FormalElement:
        return residue_of(element, self)

    def value_group(self) -> Lattice:
        gens = [
            generator_value(self, g.name)
            for g in self.tower.generators
        ]
        return Lattice.from_generators(
            self.depth, [v for v in gens if not v.is_zero()], include_integers=True
        )

    def residue_tower(self) -> FieldTower:
        return residue_tower(self)


def _generator_lookup(spec: ValuationSpec) -> dict[str, ExtensionGenerator]:
    return {g.name: g for g in spec.tower.generators}


def generator_value(spec: ValuationSpec, name: str) -> ValueVector:
    """Value of a generator under spec, recomputed from its rhs.

    Ramification is re-certified at this depth: a negative rhs value
    must avoid p times the value group of everything adjoined before.
    """
    tower = spec.tower
    p = tower.char
    index = next(i for i, g in enumerate(tower.generators) if g.name == name)
    gen = tower.generators[index]
    below = FieldTower(tower.ground, tower.variables, tower.generators[:index])
    sub = ValuationSpec(below, spec.depth)
    v = value_of(gen.rhs, sub)
    if gen.kind == COMPOSITE:
        return v.scale(Fraction(1, p * p))
    if v.is_zero():
        return ValueVector.zero(spec.depth)
    if gen.kind == PTH_ROOT:
        return v.scale(Fraction(1, p))
    # artin-schreier: only a negative rhs value outside p * Gamma ramifies
    if not v < ValueVector.zero(spec.depth):
        raise UnsupportedConfiguration(
            f"generator {name!r} has positive rhs value under this valuation"
        )
    if sub.value_group().scale(p).contains(v):
        raise UnsupportedConfiguration(
            f"generator {name!r} has rhs value in p times the base value group"
        )
    return v.scale(Fraction(1, p))


def _term_value_and_active(
    spec: ValuationSpec, m: Monomial, gens: dict[str, ExtensionGenerator]
) -> tuple[ValueVector, Monomial]:
    p = spec.tower.char
    total = ValueVector.zero(spec.depth)
    active: list[tuple[str, int]] = []
    for name, exp in m:
        if name in spec.tower.ground.constants:
            continue
        if name in gens:
            if not -p < exp < p:
                raise UnsupportedConfiguration(
                    f"power {name}^{exp} is not reduced modulo the degree-p relation"
                )
            v = generator_value(spec, name)
        elif name in spec.tower.variables:
            v = spec.variable_value(name)
        else:
            raise UnsupportedConfiguration(f"unknown name {name!r} in element")
        if not v.is_zero():
            total = total + v.scale(exp)
            active.append((name, exp))
    return total, tuple(sorted(active))


def value_of(element: FormalElement, spec: ValuationSpec) -> ValueVector:
    """Certified value of an element, or AmbiguousValuation.

    Terms are grouped by their active part.  When a single active part
    realises the minimal value the remaining factor is a nonzero sum of
    distinct residue-level monomials, so the minimum is the value.  Two
    different active parts at the minimum could cancel; we refuse.
    """
    if element.is_zero():
        raise ZeroElement("the zero element has no value")
    if element.char != spec.tower.char:
        raise UnsupportedConfiguration("element characteristic differs from tower")
    gens = _generator_lookup(spec)
    best: ValueVector | None = None
    best_parts: set[Monomial] = set()
    for m, _ in element.terms:
        v, part = _term_value_and_active(spec, m, gens)
        if best is None or v < best:
            best = v
            best_parts = {part}
        elif v == best:
            best_parts.add(part)
    assert best is not None
    if len(best_parts) > 1:
        raise AmbiguousValuation(
            "minimal value is reached by several active parts; "
            "terms could cancel"
        )
    return best


def residue_of(element: FormalElement, spec: ValuationSpec) -> FormalElement:
    """Image in the residue field of an element of value at least 0.

    Keeps the terms of value exactly 0; such a term must have an empty
    active part, since any unit built from active variables would need
    its residue taken by hand.
    """
    if element.is_zero():
        return element
    gens = _generator_lookup(spec)
    zero = ValueVector.zero(spec.depth)
    kept: dict[Monomial, int] = {}
    for m, c in element.terms:
        v, part = _term_value_and_active(spec, m, gens)
        if v < zero:
            raise UnsupportedConfiguration("element has negative value, no residue")
        if v == zero:
            if part:
                raise UnsupportedConfiguration(
                    "unit with a nontrivial active part has no formal residue"
                )
            kept[m] = c
    return FormalElement._normal(element.char, kept)


def residue_tower(spec: ValuationSpec) -> FieldTower:
    """The residue field of spec, rebuilt as a tower over the inner variables.

    Generators of value 0 survive with their rhs replaced by its residue
    (or a declared one) and are re-certified against the partially built
    residue tower; ramified generators disappear into the value group.
    Hypotheses and declared residues pass through on the caller's
    responsibility.
    """
    tower = spec.tower
    out = FieldTower(tower.ground, spec.inactive_variables)
    for i, g in enumerate(tower.generators):
        if not generator_value(spec, g.name).is_zero():
            continue
        below = FieldTower(tower.ground, tower.variables, tower.generators[:i])
        if g.residue_rhs is not None:
            rhs_bar = g.residue_rhs
            just = "residue-declared"
        else:
            rhs_bar = residue_of(g.rhs, ValuationSpec(below, spec.depth))
            just = (
                g.justification
                if g.justification == "hypothesis"
                else _residue_degree_p_justification(out, rhs_bar, g.kind)
            )
        out = out.with_generator(
            ExtensionGenerator(g.name, g.kind, rhs_bar, just, note=g.note)
        )
    return out


def _residue_degree_p_justification(
    tower: FieldTower, rhs: FormalElement, kind: str
) -> str:
    """Why x with the given residual equation generates a degree-p extension."""
    spec = tower.spec()
    p = tower.char
    if kind == ARTIN_SCHREIER:
        try:
            v = value_of(rhs, spec)
        except AmbiguousValuation:
            v = None
        if v is not None and v < ValueVector.zero(spec.depth) and not spec.value_group().scale(p).contains(v):
            return "residue-laurent"
    if kind == PTH_ROOT:
        try:
            v = value_of(rhs, spec)
        except AmbiguousValuation:
            v = None
        if v is not None and not v.is_zero() and not spec.value_group().scale(p).contains(v):
            return "residue-laurent"
    constants = tower.ground.constants
    names = rhs.names()
    if names and names <= constants and not tower.ground.algebraically_closed:
        # generic constants satisfy no Artin-Schreier or p-th power relation
        return "residue-generic"
    raise UnsupportedConfiguration(
        "cannot certify that the residual equation has degree p"
    )


def adjoin_artin_schreier(
    tower: FieldTower,
    name: str,
    rhs: FormalElement,
    *,
    declared_residue_rhs: FormalElement | None = None,
    hypothesis: bool = False,
    note: str = "",
) -> FieldTower:
    """Adjoin x with x^p - x = rhs, certifying the degree as we go.

    A negative rhs value outside p * Gamma gives a totally ramified
    degree-p extension.  A rhs of value 0 is pushed to the residue
    field, where the equation must itself be certified.  A positive
    value would split by lifting the trivial residue equation, so it is
    rejected.
    """
    spec = tower.spec()
    if hypothesis:
        gen = ExtensionGenerator(name, ARTIN_SCHREIER, rhs, "hypothesis", note=note)
        return tower.with_generator(gen)
    v = value_of(rhs, spec)
    zero = ValueVector.zero(spec.depth)
    if v < zero:
        if spec.value_group().scale(tower.char).contains(v):
            raise UnsupportedConfiguration(
                f"value of rhs for {name!r} lies in p times the value group"
            )
        gen = ExtensionGenerator(name, ARTIN_SCHREIER, rhs, "ramified", note=note)
        return tower.with_generator(gen)
    if v == zero:
        if declared_residue_rhs is not None:
            gen = ExtensionGenerator(
                name, ARTIN_SCHREIER, rhs, "residue-declared",
                residue_rhs=declared_residue_rhs, note=note,
            )
            return tower.with_generator(gen)
        rbar = residue_of(rhs, spec)
        just = _residue_degree_p_justification(spec.residue_tower(), rbar, ARTIN_SCHREIER)
        gen = ExtensionGenerator(name, ARTIN_SCHREIER, rhs, just, note=note)
        return tower.with_generator(gen)
    raise UnsupportedConfiguration(
        f"rhs for {name!r} has positive value; the equation splits"
    )


def adjoin_pth_root(
    tower: FieldTower,
    name: str,
    rhs: FormalElement,
    *,
    hypothesis: bool = False,
    note: str = "",
) -> FieldTower:
    """Adjoin y with y^p = rhs; degree p needs v(rhs) outside p * Gamma
    or a certified non-p-th-power residue."""
    spec = tower.spec()
    if hypothesis:
        gen = ExtensionGenerator(name, PTH_ROOT, rhs, "hypothesis", note=note)
        return tower.with_generator(gen)
    v = value_of(rhs, spec)
    if not v.is_zero():
        if spec.value_group().scale(tower.char).contains(v):
            raise UnsupportedConfiguration(
                f"value of rhs for {name!r} lies in p times the value group"
            )
        gen = ExtensionGenerator(name, PTH_ROOT, rhs, "ramified", note=note)
        return tower.with_generator(gen)
    rbar = residue_of(rhs, spec)
    just = _residue_degree_p_justification(spec.residue_tower(), rbar, PTH_ROOT)
    gen = ExtensionGenerator(name, PTH_ROOT, rhs, just, note=note)
    return tower.with_generator(gen)


def composite_from_reciprocal(
    tower: FieldTower,
    as_rhs: FormalElement,
    root_rhs: FormalElement,
    new_name: str,
) -> FieldTower:
    """Adjoin z with z^(p^2) - z^p = as_rhs, certified by a reciprocal pair.

    When x^p - x = as_rhs and y^p = root_rhs with as_rhs * root_rhs = 1,
    the element z = x - 1/y satisfies z^p = x^p - 1/y^p = x, hence the
    composite equation above, with value v(as_rhs)/p^2.  x and y need
    not (and in general cannot) live in a common valued field over the
    tower; z is adjoined directly over it.
    """
    if not (as_rhs * root_rhs).is_one():
        raise UnsupportedConfiguration(
            "composite adjunction requires the right hand sides to multiply to 1"
        )
    gen = ExtensionGenerator(
        new_name, COMPOSITE, as_rhs, "ramified",
        note="difference of an Artin-Schreier generator and an inverse p-th root",
    )
    return tower.with_generator(gen)


def artin_schreier_from_root(
    tower: FieldTower,
    as_rhs: FormalElement,
    root_name: str,
    new_name: str,
) -> FieldTower:
    """Adjoin t with t^p - t = 1/y over a tower containing y.

    y must be a p-th root generator with rhs reciprocal to as_rhs; then
    v(1/y) = v(as_rhs)/p and the ordinary ramified rule gives t value
    v(as_rhs)/p^2, matching the composite construction.
    """
    y = tower.generator(root_name)
    if y.kind != PTH_ROOT:
        raise UnsupportedConfiguration(f"{root_name!r} is not a p-th root generator")
    if not (as_rhs * y.rhs).is_one():
        raise UnsupportedConfiguration(
            "root adjunction requires the right hand sides to multiply to 1"
        )
    rhs = FormalElement.symbol(tower.char, root_name, -1)
    return adjoin_artin_schreier(tower, new_name, rhs)


def rebase_pth_root(
    tower: FieldTower, variable: str, new_name: str
) -> tuple[FieldTower, "ElementMap"]:
    """Present F(y) with y^p = variable as a Laurent tower in y.

    The variable is replaced in place by new_name and every occurrence
    in generator right hand sides becomes new_name^p.  Values measured
    in the new tower are p times the old ones in that coordinate.
    """
    if variable not in tower.variables:
        raise UnsupportedConfiguration(f"{variable!r} is not a tower variable")
    mapper = ElementMap(variable, new_name, tower.char)
    variables = tuple(new_name if v == variable else v for v in tower.variables)
    gens = tuple(
        ExtensionGenerator(
            g.name, g.kind, mapper(g.rhs), g.justification,
            residue_rhs=None if g.residue_rhs is None else mapper(g.residue_rhs),
            note=g.note,
        )
        for g in tower.generators
    )
    return FieldTower(tower.ground, variables, gens), mapper


@dataclass(frozen=True, slots=True)
class ElementMap:
    """Substitution old -> new^p used when rebasing a p-th root."""

    old: str
    new: str
    char: int

    def __call__(self, e: FormalElement) -> FormalElement:
        return e.substitute_monomial(self.old, self.new, self.char)


def reduce_generator_powers(e: FormalElement, tower: FieldTower) -> FormalElement:
    """Rewrite generator powers x^k with k >= p through the defining relation.

    Artin-Schreier generators use x^p = x + rhs, p-th roots use
    x^p = rhs.  Negative powers below -p have no monomial reduction and
    are rejected, as are composite generators.
    """
    p = tower.char
    gens = {g.name: g for g in tower.generators}
    acc = e
    while True:
        hit: tuple[Monomial, int, str, int] | None = None
        for m, c in acc.terms:
            for name, exp in m:
                g = gens.get(name)
                if g is None:
                    continue
                if exp <= -p or (g.kind == COMPOSITE and abs(exp) >= p):
                    raise UnsupportedConfiguration(
                        f"power {name}^{exp} cannot be reduced to monomials"
                    )
                if exp >= p:
                    hit = (m, c, name, exp)
                    break
            if hit:
                break
        if hit is None:
            return acc
        m, c, name, exp = hit
        g = gens[name]
        lowered = FormalElement(
            acc.char,
            ((tuple((n, x - p if n == name else x) for n, x in m), c),),
        )
        if g.kind == ARTIN_SCHREIER:
            factor = FormalElement.symbol(acc.char, name) + g.rhs
        else:
            factor = g.rhs
        acc = acc - FormalElement(acc.char, ((m, c),)) + lowered * factor


def _poly_reduce(
    coeffs: list[FormalElement], m: FormalElement, p: int
) -> list[FormalElement]:
    """Reduce a polynomial in x modulo x^p - x - m (coeffs[k] is deg k)."""
    coeffs = list(coeffs)
    while len(coeffs) - 1 >= p:
        e = len(coeffs) - 1
        c = coeffs.pop()
        if c.is_zero():
            continue
        coeffs[e - p + 1] = coeffs[e - p + 1] + c
        coeffs[e - p] = coeffs[e - p] + c * m
    return coeffs


def trace_power_oracle(m: FormalElement, i: int, p: int) -> FormalElement:
    """Tr(x^i) for the degree-p extension by x with x^p - x = m.

    Computed from first principles: sum the conjugates (x + j)^i over
    j in F_p and reduce modulo the defining polynomial.  The reduction
    must land in the base field; anything else is a hard error.
    """
    if i < 0:
        raise UnsupportedConfiguration("trace oracle wants a nonnegative power")
    zero = FormalElement.zero(p)
    total = [zero for _ in range(i + 1)]
    for j in range(p):
        for k in range(i + 1):
            c = (comb(i, k) * pow(j, i - k, p)) % p
            total[k] = total[k] + FormalElement.constant(p, c)
    reduced = _poly_reduce(total, m, p)
    if any(not c.is_zero() for c in reduced[1:]):
        raise AssertionError("trace did not reduce into the base field")
    return reduced[0]


def norm_element_oracle(
    m: FormalElement, a: FormalElement, b: FormalElement, p: int
) -> FormalElement:
    """N(a*x + b) for x with x^p - x = m, by multiplying the conjugates."""
    if a.is_zero():
        return b**p
    poly = [FormalElement.one(p)]
    for j in range(p):
        shift = b + a.scale(j)
        # multiply by (a*x + shift)
        new = [FormalElement.zero(p) for _ in range(len(poly) + 1)]
        for k, c in enumerate(poly):
            new[k] = new[k] + c * shift
            new[k + 1] = new[k + 1] + c * a
        poly = new
    reduced = _poly_reduce(poly, m, p)
    if any(not c.is_zero() for c in reduced[1:]):
        raise AssertionError("norm did not reduce into the base field")
    return reduced[0]
