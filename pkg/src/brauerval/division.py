"""Division certificates for tensor words of degree-p symbols.

Every verdict is backed by a Certificate tree whose leaves are exact
lattice computations or residue-level recursions.  The three routes for
one symbol [a, b) over a henselian Laurent tower are:

  value independence   v(x) = v(a)/p and v(y) = v(b)/p generate p^2
                       distinct classes modulo the base value group;
  semiramified         one slot ramifies with index p, the other is a
                       unit whose residue generates a certified
                       degree-p extension of the residue field;
  inertial lift        both slots are units and the residue symbol is
                       division (recursively, or by hypothesis).

Longer words peel one factor at a time.  A peel holds when, for a
partial valuation, the remaining word is defectless with value group
meeting the peeled factor's only in the base, and the residue algebras
tensor to a division ring.  The candidate partial valuations drop the
variables up to the innermost (then up to the outermost) variable of
the peeled factor; reciprocal slot pairs across factors contribute
composite generators of value v(a)/p^2 that refine the value group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import EngineError, UnsupportedConfiguration, ZeroElement
from .lattices import Lattice, ValueVector
from .symbols import SymbolSum, SymbolTerm, normal_form, symbol
from .towers import (
    FieldTower,
    FormalElement,
    ValuationSpec,
    adjoin_artin_schreier,
    adjoin_pth_root,
    artin_schreier_image,
    rebase_pth_root,
    residue_of,
    trace_power_oracle,
    value_of,
)

CERTIFIED = "certified"
NOT_CERTIFIED = "not-certified"
REFUTED = "refuted"

MAX_CLASS_WORK = 1_000_000


@dataclass(frozen=True, slots=True)
class Certificate:
    """One checked inference: rule name, verdict, evidence, children."""

    rule: str
    status: str
    payload: tuple[tuple[str, object], ...] = ()
    children: tuple[Certificate, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status == CERTIFIED

    def get(self, key: str) -> object:
        for k, v in self.payload:
            if k == key:
                return v
        raise KeyError(key)

    def find(self, rule: str) -> Certificate | None:
        if self.rule == rule:
            return self
        for child in self.children:
            hit = child.find(rule)
            if hit is not None:
                return hit
        return None


@dataclass(frozen=True, slots=True)
class SymbolValueData:
    """Values of the two generators of one symbol under one valuation."""

    term: SymbolTerm
    slot1_value: ValueVector
    slot2_value: ValueVector
    as_value: ValueVector
    root_value: ValueVector
    slot1_residual: bool
    slot2_residual: bool


@dataclass(frozen=True, slots=True)
class AlgebraValueData:
    """Joint value data of a tensor word at one partial valuation.

    pairs lists (i, j) with slot1 of factor i reciprocal to slot2 of
    factor j; the difference of the corresponding generators then has
    value v(slot1_i)/p^2, which replaces v(x_i) in the monomial basis.
    """

    degree: int
    depth: int
    factors: tuple[SymbolValueData, ...]
    pairs: tuple[tuple[int, int], ...]
    base_group: Lattice
    value_group: Lattice

    @property
    def dim(self) -> int:
        return self.degree ** (2 * len(self.factors))

    @property
    def ram_index(self) -> int:
        return self.value_group.index_over(self.base_group)

    @property
    def totally_ramified(self) -> bool:
        return self.ram_index == self.dim

    def basis_values(self) -> list[ValueVector]:
        """Values of the 2k monomial generators, composite-refined."""
        p = self.degree
        paired = {i for i, _ in self.pairs}
        out = []
        for i, f in enumerate(self.factors):
            if i in paired:
                out.append(f.slot1_value.scale(Fraction(1, p * p)))
            else:
                out.append(f.as_value)
            out.append(f.root_value)
        return out

    def natural_values(self) -> list[ValueVector]:
        """Values of the plain x_i, y_i generators, no refinement."""
        out = []
        for f in self.factors:
            out.append(f.as_value)
            out.append(f.root_value)
        return out


def _symbol_value_data(term: SymbolTerm, spec: ValuationSpec) -> SymbolValueData:
    p = spec.tower.char
    zero = ValueVector.zero(spec.depth)
    va = value_of(term.slot1, spec)
    vb = value_of(term.slot2, spec)
    if va > zero:
        raise UnsupportedConfiguration(
            "slot1 has positive value, the symbol splits at this valuation"
        )
    as_value = va.scale(Fraction(1, p)) if va < zero else zero
    return SymbolValueData(
        term=term,
        slot1_value=va,
        slot2_value=vb,
        as_value=as_value,
        root_value=vb.scale(Fraction(1, p)),
        slot1_residual=va == zero,
        slot2_residual=vb == zero,
    )


def algebra_value_data(
    word: SymbolSum, tower: FieldTower, depth: int | None = None
) -> AlgebraValueData:
    if not word.terms:
        raise ZeroElement("an empty tensor word has no value data")
    spec = tower.spec(tower.depth if depth is None else depth)
    factors = tuple(_symbol_value_data(t, spec) for t in word.terms)
    zero = ValueVector.zero(spec.depth)
    pairs: list[tuple[int, int]] = []
    for i, fi in enumerate(factors):
        if not fi.slot1_value < zero:
            continue
        for j, fj in enumerate(factors):
            if i == j:
                continue
            if (fi.term.slot1 * fj.term.slot2).is_one():
                pairs.append((i, j))
                break
    p = tower.char
    paired = {i for i, _ in pairs}
    gens = []
    for i, f in enumerate(factors):
        if i in paired:
            gens.append(f.slot1_value.scale(Fraction(1, p * p)))
        else:
            gens.append(f.as_value)
        gens.append(f.root_value)
    base = spec.value_group()
    group = base.sum_with(
        Lattice.from_generators(
            spec.depth, [g for g in gens if not g.is_zero()], include_integers=True
        )
    )
    return AlgebraValueData(
        degree=p,
        depth=spec.depth,
        factors=factors,
        pairs=tuple(pairs),
        base_group=base,
        value_group=group,
    )


def _class_key(base: Lattice, vec: ValueVector) -> tuple[Fraction, ...]:
    return tuple(
        c - Fraction(c.numerator // c.denominator) for c in base.rational_coords(vec)
    )


def class_representative(base: Lattice, vec: ValueVector) -> ValueVector:
    """Canonical representative of vec modulo base, inside the unit box."""
    key = _class_key(base, vec)
    rep = ValueVector.zero(base.dim)
    for c, b in zip(key, base.basis):
        rep = rep + b.scale(c)
    return rep


def independence_division(data: AlgebraValueData) -> Certificate:
    """Division via p^(2k) distinct monomial value classes.

    The monomials x^s y^t (composite-refined) of a division candidate
    have pairwise distinct values modulo the base group exactly when
    the graded algebra is a twisted group ring over the residue field,
    which has no zero divisors; the word is then division and totally
    ramified with the constructed value group.
    """
    p = data.degree
    values = data.basis_values()
    if data.dim > MAX_CLASS_WORK:
        raise UnsupportedConfiguration("class enumeration exceeds the work bound")
    seen: set[tuple[Fraction, ...]] = set()
    for exps in itertools.product(range(p), repeat=len(values)):
        vec = ValueVector.zero(data.depth)
        for e, v in zip(exps, values):
            vec = vec + v.scale(e)
        seen.add(_class_key(data.base_group, vec))
    distinct = len(seen)
    status = CERTIFIED if distinct == data.dim else NOT_CERTIFIED
    return Certificate(
        "value-independence",
        status,
        payload=(
            ("dimension", data.dim),
            ("distinct_classes", distinct),
            ("ramification_index", data.ram_index),
            ("residue_degree", 1),
            ("value_group", data.value_group),
            ("totally_ramified", data.totally_ramified),
        ),
    )


def _fresh(tower: FieldTower, base: str) -> str:
    taken = (
        set(tower.ground.constants)
        | set(tower.variables)
        | {g.name for g in tower.generators}
    )
    name = base
    k = 0
    while name in taken:
        k += 1
        name = f"{base}{k}"
    return name


def _residue_extension_certificate(
    res_tower: FieldTower, rhs: FormalElement, kind: str
) -> Certificate:
    """Degree-p residue extension by adjoining to the residue tower."""
    name = _fresh(res_tower, "theta")
    try:
        if kind == "artin-schreier":
            extended = adjoin_artin_schreier(res_tower, name, rhs)
        else:
            extended = adjoin_pth_root(res_tower, name, rhs)
        just = extended.generator(name).justification
        return Certificate(
            "residue-extension",
            CERTIFIED,
            payload=(("kind", kind), ("rhs", rhs), ("justification", just)),
        )
    except EngineError as err:
        return Certificate(
            "residue-extension",
            NOT_CERTIFIED,
            payload=(("kind", kind), ("rhs", rhs), ("reason", str(err))),
        )


def symbol_division(
    term: SymbolTerm,
    tower: FieldTower,
    depth: int | None = None,
    residue_hypothesis: str | None = None,
) -> Certificate:
    """Certify one symbol as a division algebra over the tower.

    residue_hypothesis ("division" or "split") settles residue symbols
    over the constant field, where no further valuation is available;
    it is the caller's stated assumption and is recorded as such.
    """
    spec = tower.spec(tower.depth if depth is None else depth)
    p = tower.char
    if term.slot1.is_zero():
        return Certificate(
            "symbol-division",
            REFUTED,
            payload=(
                ("route", "hensel-split"),
                ("reason", "slot1 vanishes, the equation splits"),
            ),
        )
    if value_of(term.slot1, spec) > ValueVector.zero(spec.depth):
        return Certificate(
            "symbol-division",
            REFUTED,
            payload=(
                ("route", "hensel-split"),
                ("reason", "slot1 has positive value, the equation splits"),
            ),
        )
    word = SymbolSum.of(term)
    data = algebra_value_data(word, tower, spec.depth)
    f = data.factors[0]

    if not f.slot1_residual and not f.slot2_residual:
        child = independence_division(data)
        return Certificate(
            "symbol-division",
            child.status,
            payload=(
                ("route", "value-independence"),
                ("value_group", data.value_group),
                ("ramification_index", data.ram_index),
                ("residue_degree", 1),
            ),
            children=(child,),
        )

    if f.slot1_residual != f.slot2_residual:
        res_tower = spec.residue_tower()
        if f.slot1_residual:
            ramified_value = f.root_value
            rbar = residue_of(term.slot1, spec)
            res_cert = _residue_extension_certificate(res_tower, rbar, "artin-schreier")
        else:
            ramified_value = f.as_value
            rbar = residue_of(term.slot2, spec)
            res_cert = _residue_extension_certificate(res_tower, rbar, "pth-root")
        ram_group = data.base_group.sum_with(
            Lattice.from_generators(spec.depth, [ramified_value], include_integers=True)
        )
        e = ram_group.index_over(data.base_group)
        ok = e == p and res_cert.ok
        return Certificate(
            "symbol-division",
            CERTIFIED if ok else NOT_CERTIFIED,
            payload=(
                ("route", "semiramified"),
                ("value_group", ram_group),
                ("ramification_index", e),
                ("residue_degree", p),
            ),
            children=(res_cert,),
        )

    # both slots are units: the question descends to the residue field
    rbar1 = residue_of(term.slot1, spec)
    rbar2 = residue_of(term.slot2, spec)
    res_term = symbol(p, rbar1, rbar2)
    try:
        split = normal_form(SymbolSum.of(res_term)).is_zero_sum()
    except EngineError:
        split = False
    if split:
        return Certificate(
            "symbol-division",
            REFUTED,
            payload=(
                ("route", "inertial"),
                ("reason", "residue symbol has trivial class"),
            ),
        )
    res_tower = spec.residue_tower()
    if res_tower.variables:
        child = symbol_division(res_term, res_tower, None, residue_hypothesis)
        return Certificate(
            "symbol-division",
            child.status,
            payload=(
                ("route", "inertial"),
                ("value_group", data.base_group),
                ("ramification_index", 1),
                ("residue_degree", p * p),
            ),
            children=(child,),
        )
    if residue_hypothesis == "division":
        return Certificate(
            "symbol-division",
            CERTIFIED,
            payload=(
                ("route", "inertial"),
                ("value_group", data.base_group),
                ("ramification_index", 1),
                ("residue_degree", p * p),
                ("hypothesis", "residue symbol assumed division"),
            ),
        )
    if residue_hypothesis == "split":
        return Certificate(
            "symbol-division",
            REFUTED,
            payload=(
                ("route", "inertial"),
                ("hypothesis", "residue symbol assumed split"),
            ),
        )
    return Certificate(
        "symbol-division",
        NOT_CERTIFIED,
        payload=(
            ("route", "inertial"),
            ("reason", "no verdict available for the residue symbol"),
        ),
    )


def _residual_slots(
    data: AlgebraValueData, spec: ValuationSpec
) -> list[tuple[int, str, FormalElement]]:
    out = []
    for i, f in enumerate(data.factors):
        if f.slot1_residual:
            out.append((i, "artin-schreier", residue_of(f.term.slot1, spec)))
        if f.slot2_residual:
            out.append((i, "pth-root", residue_of(f.term.slot2, spec)))
    return out


def _plain_variable(element: FormalElement, tower: FieldTower) -> str | None:
    if len(element.terms) != 1:
        return None
    names, coeff = element.terms[0]
    if coeff != 1 or len(names) != 1 or names[0][1] != 1:
        return None
    return names[0][0] if names[0][0] in tower.variables else None


def _over_extension_certificate(
    res_tower: FieldTower,
    ext_kind: str,
    ext_rhs: FormalElement,
    residue_symbol: SymbolTerm,
    residue_hypothesis: str | None,
) -> Certificate:
    """Residue symbol base-changed to the left factor's residue field.

    The tensor of the residue algebras is the residue symbol over the
    degree-p extension cut out by ext_rhs.  When both the symbol and
    the extension are totally ramified over a residue tower with
    variables, a trace-value comparison can rule the extension out as
    a maximal subfield, which keeps the symbol division after the base
    change.  Otherwise the verdict is whatever the caller hypothesises
    about the extended symbol.
    """
    p = res_tower.char
    payload: list[tuple[str, object]] = [
        ("shape", "residue-symbol-over-extension"),
        ("extension_kind", ext_kind),
        ("extension_rhs", ext_rhs),
        ("residue_symbol", residue_symbol),
    ]
    if res_tower.variables:
        res_spec = res_tower.spec()
        zero = ValueVector.zero(res_tower.depth)
        v_ext = value_of(ext_rhs, res_spec)
        v_slot1 = value_of(residue_symbol.slot1, res_spec)
        field_order = res_spec.value_group().order_of_class(v_ext.scale(Fraction(1, p)))
        if v_ext < zero and v_slot1 < zero and field_order == p:
            data = algebra_value_data(SymbolSum.of(residue_symbol), res_tower)
            ind = independence_division(data)
            if ind.ok and data.totally_ramified:
                algebra_w = trace_profile(res_tower, residue_symbol.slot1)
                field_w = trace_profile(res_tower, ext_rhs)
                if field_w.minimum < algebra_w.minimum:
                    payload += [
                        ("justification", "trace-value-obstruction"),
                        ("algebra_trace_value", algebra_w.minimum),
                        ("field_trace_value", field_w.minimum),
                    ]
                    return Certificate(
                        "residue-tensor",
                        CERTIFIED,
                        payload=tuple(payload),
                        children=(ind,),
                    )
    ext_cert = _residue_extension_certificate(res_tower, ext_rhs, ext_kind)
    if not ext_cert.ok:
        return Certificate(
            "residue-tensor",
            NOT_CERTIFIED,
            payload=tuple(payload + [("reason", "extension is not certified degree p")]),
            children=(ext_cert,),
        )
    if residue_hypothesis == "division":
        payload.append(("hypothesis", "extended residue symbol assumed division"))
        return Certificate(
            "residue-tensor", CERTIFIED, payload=tuple(payload), children=(ext_cert,)
        )
    if residue_hypothesis == "split":
        payload.append(("hypothesis", "extended residue symbol assumed split"))
        return Certificate(
            "residue-tensor", REFUTED, payload=tuple(payload), children=(ext_cert,)
        )
    payload.append(("reason", "no verdict available over the extension"))
    return Certificate(
        "residue-tensor", NOT_CERTIFIED, payload=tuple(payload), children=(ext_cert,)
    )


def residue_tensor_certificate(
    spec: ValuationSpec,
    d_residual: tuple[str, FormalElement] | None,
    e_data: AlgebraValueData,
    residue_hypothesis: str | None = None,
) -> Certificate:
    """Certify that the residue algebras tensor to a division ring.

    The supported shapes follow the constructions this engine checks:
    a trivial side, a reciprocal Artin-Schreier/root pair combining to
    a field of degree p^2 over the residue field, a root rebased to a
    Laurent variable followed by a shift and value independence, and a
    fully residual symbol handled recursively.
    """
    p = spec.tower.char
    res_tower = spec.residue_tower()
    ef = e_data.factors[0]
    e_term = ef.term

    if d_residual is None:
        if not ef.slot1_residual and not ef.slot2_residual:
            return Certificate(
                "residue-tensor", CERTIFIED, payload=(("shape", "both-trivial"),)
            )
        if ef.slot1_residual and ef.slot2_residual:
            rbar = symbol(p, residue_of(e_term.slot1, spec), residue_of(e_term.slot2, spec))
            child = symbol_division(rbar, res_tower, None, residue_hypothesis)
            return Certificate(
                "residue-tensor",
                child.status,
                payload=(("shape", "residue-symbol"),),
                children=(child,),
            )
        if ef.slot1_residual:
            child = _residue_extension_certificate(
                res_tower, residue_of(e_term.slot1, spec), "artin-schreier"
            )
        else:
            child = _residue_extension_certificate(
                res_tower, residue_of(e_term.slot2, spec), "pth-root"
            )
        return Certificate(
            "residue-tensor",
            child.status,
            payload=(("shape", "residue-field"),),
            children=(child,),
        )

    d_kind, d_rbar = d_residual

    if not ef.slot1_residual and not ef.slot2_residual:
        child = _residue_extension_certificate(res_tower, d_rbar, d_kind)
        return Certificate(
            "residue-tensor",
            child.status,
            payload=(("shape", "residue-field"),),
            children=(child,),
        )

    if d_kind == "pth-root" and ef.slot1_residual and not ef.slot2_residual:
        e_rbar = residue_of(e_term.slot1, spec)
        if not (e_rbar * d_rbar).is_one():
            return Certificate(
                "residue-tensor",
                NOT_CERTIFIED,
                payload=(("reason", "residues are not reciprocal"),),
            )
        res_spec = res_tower.spec()
        v = value_of(e_rbar, res_spec)
        order = res_spec.value_group().order_of_class(v.scale(Fraction(1, p * p)))
        ok = order == p * p
        return Certificate(
            "residue-tensor",
            CERTIFIED if ok else NOT_CERTIFIED,
            payload=(
                ("shape", "composite-field"),
                ("composite_value", v.scale(Fraction(1, p * p))),
                ("class_order", order),
            ),
        )

    if ef.slot1_residual and ef.slot2_residual:
        variable = _plain_variable(d_rbar, res_tower)
        e_rbar1 = residue_of(e_term.slot1, spec)
        if d_kind == "pth-root" and variable and (e_rbar1 * d_rbar).is_one():
            root_name = _fresh(res_tower, "rho")
            rebased, mapper = rebase_pth_root(res_tower, variable, root_name)
            slot1 = mapper(e_rbar1)
            shift_witness = FormalElement.symbol(p, root_name, -1, p - 1)
            shifted = slot1 + artin_schreier_image(shift_witness)
            if shifted != FormalElement.symbol(p, root_name, -1):
                return Certificate(
                    "residue-tensor",
                    NOT_CERTIFIED,
                    payload=(("reason", "shift did not reduce the rebased slot"),),
                )
            slot2 = mapper(residue_of(e_term.slot2, spec))
            child = symbol_division(symbol(p, shifted, slot2), rebased)
            return Certificate(
                "residue-tensor",
                child.status,
                payload=(
                    ("shape", "rebase-shift-independence"),
                    ("rebased_variable", variable),
                    ("shift_witness", shift_witness),
                ),
                children=(child,),
            )
        residue_symbol = symbol(p, e_rbar1, residue_of(e_term.slot2, spec))
        return _over_extension_certificate(
            res_tower, d_kind, d_rbar, residue_symbol, residue_hypothesis
        )

    return Certificate(
        "residue-tensor",
        NOT_CERTIFIED,
        payload=(("reason", "unsupported residue shape"),),
    )


def morandi_step(
    tower: FieldTower,
    depth: int,
    d_word: SymbolSum,
    e_term: SymbolTerm,
    d_division: Certificate,
    residue_hypothesis: str | None = None,
) -> Certificate:
    """One peel: D tensor E is division when every condition certifies.

    Conditions: D is division (given), D is defectless at this
    valuation, E is division at it, the two value groups meet in the
    base group, and the residue algebras tensor to a division ring.
    """
    spec = tower.spec(depth)
    p = tower.char
    d_data = algebra_value_data(d_word, tower, depth)
    e_data = algebra_value_data(SymbolSum.of(e_term), tower, depth)

    residual = _residual_slots(d_data, spec)
    if len(residual) > 1:
        return Certificate(
            "peel",
            NOT_CERTIFIED,
            payload=(
                ("depth", depth),
                ("reason", "more than one residual slot on the left factor"),
            ),
        )
    conditions: list[tuple[str, bool]] = [("left-division", d_division.ok)]
    children: list[Certificate] = []

    if residual:
        _, kind, rbar = residual[0]
        f_cert = _residue_extension_certificate(spec.residue_tower(), rbar, kind)
        children.append(f_cert)
        f_d = p if f_cert.ok else 1
        d_residual = (kind, rbar)
    else:
        f_d = 1
        d_residual = None
    defectless = d_data.ram_index * f_d == d_data.dim
    conditions.append(("left-defectless", defectless))

    e_cert = symbol_division(e_term, tower, depth, residue_hypothesis)
    children.append(e_cert)
    conditions.append(("right-division", e_cert.ok))

    meet = d_data.value_group.intersect(e_data.value_group)
    disjoint = meet == d_data.base_group
    conditions.append(("value-groups-meet-in-base", disjoint))

    r_cert = residue_tensor_certificate(spec, d_residual, e_data, residue_hypothesis)
    children.append(r_cert)
    conditions.append(("residue-tensor-division", r_cert.ok))

    ok = all(flag for _, flag in conditions)
    return Certificate(
        "peel",
        CERTIFIED if ok else NOT_CERTIFIED,
        payload=(
            ("depth", depth),
            ("conditions", tuple(conditions)),
            ("left_value_group", d_data.value_group),
            ("left_ramification_index", d_data.ram_index),
            ("left_residue_degree", f_d),
            ("left_dimension", d_data.dim),
            ("right_value_group", e_data.value_group),
        ),
        children=tuple(children),
    )


def peel_depths(e_term: SymbolTerm, tower: FieldTower) -> list[int]:
    """Candidate partial valuations for peeling e_term.

    First drop everything up to the innermost variable of the factor,
    then (if different and nontrivial) up to its outermost variable.
    """
    used = e_term.slot1.names() | e_term.slot2.names()
    positions = sorted(
        i for i, v in enumerate(tower.variables) if v in used
    )
    if not positions:
        raise UnsupportedConfiguration("peeled factor uses no tower variable")
    out = []
    depth_a = tower.depth - (positions[0] + 1)
    depth_b = tower.depth - (positions[-1] + 1)
    if depth_a > 0:
        out.append(depth_a)
    if depth_b > 0 and depth_b != depth_a:
        out.append(depth_b)
    return out


def chain_division(
    word: SymbolSum,
    tower: FieldTower,
    residue_hypothesis: str | None = None,
) -> Certificate:
    """Certify a whole tensor word as division, peeling right to left."""
    if not word.terms:
        raise ZeroElement("an empty tensor word cannot be division")
    if len(word.terms) == 1:
        return chain_wrap(
            symbol_division(word.terms[0], tower, None, residue_hypothesis)
        )
    e_term = word.terms[-1]
    d_word = SymbolSum(word.degree, word.terms[:-1])
    d_cert = chain_division(d_word, tower, residue_hypothesis)
    if not d_cert.ok:
        return Certificate(
            "chain",
            d_cert.status,
            payload=(("reason", "left part failed"),),
            children=(d_cert,),
        )
    try:
        depths = peel_depths(e_term, tower)
    except UnsupportedConfiguration as err:
        return Certificate(
            "chain",
            NOT_CERTIFIED,
            payload=(("reason", str(err)),),
            children=(d_cert,),
        )
    attempts: list[tuple[str, object]] = []
    for depth in depths:
        try:
            cert = morandi_step(
                tower, depth, d_word, e_term, d_cert, residue_hypothesis
            )
        except EngineError as err:
            attempts.append((f"depth-{depth}", str(err)))
            continue
        if cert.ok:
            return Certificate(
                "chain",
                CERTIFIED,
                payload=(("peel_depth", depth), ("factors", len(word.terms))),
                children=(cert, d_cert),
            )
        attempts.append((f"depth-{depth}", cert))
    return Certificate(
        "chain",
        NOT_CERTIFIED,
        payload=tuple(attempts) or (("reason", "no candidate valuation"),),
        children=(d_cert,),
    )


def chain_wrap(cert: Certificate) -> Certificate:
    return Certificate(
        "chain",
        cert.status,
        payload=(("factors", 1),),
        children=(cert,),
    )


# ----------------------------------------------------- value class counts


def trace_zero_value_classes(
    data: AlgebraValueData, window: Lattice | None = None
) -> frozenset[ValueVector]:
    """Value classes available to trace-zero elements of the word.

    The reduced trace kills every basis monomial except the product of
    the (p-1)-st powers of the Artin-Schreier generators, so the class
    of that one monomial is withheld from the full set of monomial
    classes (within the window, when one is given).
    """
    p = data.degree
    if data.dim > MAX_CLASS_WORK:
        raise UnsupportedConfiguration("class enumeration exceeds the work bound")
    values = data.natural_values()
    classes: set[ValueVector] = set()
    for exps in itertools.product(range(p), repeat=len(values)):
        vec = ValueVector.zero(data.depth)
        for e, v in zip(exps, values):
            vec = vec + v.scale(e)
        rep = class_representative(data.base_group, vec)
        if window is None or window.contains(rep):
            classes.add(rep)
    classes.discard(excluded_trace_class(data))
    return frozenset(classes)


def excluded_trace_class(data: AlgebraValueData) -> ValueVector:
    """Class of the unique monomial with nonzero reduced trace."""
    p = data.degree
    vec = ValueVector.zero(data.depth)
    for f in data.factors:
        vec = vec + f.as_value.scale(p - 1)
    return class_representative(data.base_group, vec)


# ------------------------------------------------------- trace invariants


@dataclass(frozen=True, slots=True)
class TraceProfile:
    """Trace valuation profile of a degree-p Artin-Schreier generator.

    minimum is min over i of v(Tr(x^i)) - i * v(x), the closed form is
    -(p-1) * v(x), and the table keeps the per-power evidence.
    """

    minimum: ValueVector
    closed_form: ValueVector
    table: tuple[tuple[int, ValueVector | None], ...]


def trace_profile(tower: FieldTower, rhs: FormalElement) -> TraceProfile:
    spec = tower.spec()
    p = tower.char
    zero = ValueVector.zero(spec.depth)
    v_rhs = value_of(rhs, spec)
    if not v_rhs < zero:
        raise UnsupportedConfiguration("trace profile needs a ramified generator")
    gen_value = v_rhs.scale(Fraction(1, p))
    best: ValueVector | None = None
    rows: list[tuple[int, ValueVector | None]] = []
    for i in range(1, p):
        tr = trace_power_oracle(rhs, i, p)
        if tr.is_zero():
            rows.append((i, None))
            continue
        diff = value_of(tr, spec) - gen_value.scale(i)
        rows.append((i, diff))
        if best is None or diff < best:
            best = diff
    if best is None:
        raise UnsupportedConfiguration("all small traces vanished")
    return TraceProfile(
        minimum=best,
        closed_form=gen_value.scale(-(p - 1)),
        table=tuple(rows),
    )
