"""Builtin quantum seeds, presented algebras and realization maps.

Matrices are transcribed as data; rows are annotated with the variable that
labels them. A realization sends each seed label to an element of a presented
algebra, which lets every exchange relation be checked on the algebra side.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .ncalg import NCPolynomial, Presentation, q_commutator, quantum_minor
from .qscalar import ONE, QScalar, qpow
from .seed import QuantumSeed


class UnknownExample(KeyError):
    def __str__(self):
        return str(self.args[0])


@dataclass(frozen=True)
class TableEntry:
    """One line of a published mutation table.

    ``sequence`` lists cluster positions (0-based) mutated left to right;
    ``terms`` gives the right-hand side of the last exchange relation as
    (half-exponent of q, {position: power}) over the seed just before the
    last mutation; ``new`` is the expected label of the new variable.
    """

    title: str
    sequence: tuple
    text: str
    terms: tuple
    new: str
    note: str = ""


@dataclass
class ExampleBundle:
    name: str
    seed: QuantumSeed
    algebra: Presentation | None = None
    realization: dict | None = None
    expected_variables: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    table: tuple = ()
    identities: tuple = ()  # (title, lhs, rhs) checked in the algebra
    notes: tuple = ()

    def __post_init__(self):
        if self.realization is not None:
            missing = [n for n in self.seed.names if n not in self.realization]
            if missing:
                raise ValueError(f"realization of {self.name} misses {missing}")


# -- seeds ---------------------------------------------------------------

def _sl2_seed():
    names = ("a", "b", "c")
    B = (
        (0,),   # a
        (-1,),  # b
        (-1,),  # c
    )
    L = (
        (0, 1, 1),
        (-1, 0, 0),
        (-1, 0, 0),
    )
    return QuantumSeed.build(names, B, L, mutable_rows=(0,))


GR25_NAMES = ("D15", "D14", "D13", "D12", "D23", "D34", "D45")


def _gr25_seed():
    B = (
        (-1, 0),  # D15
        (0, -1),  # D14 (mutable)
        (1, 0),   # D13 (mutable)
        (0, 1),   # D12
        (0, -1),  # D23
        (-1, 1),  # D34
        (1, 0),   # D45
    )
    L = (
        (0, -1, -1, -1, 0, 0, 1),
        (1, 0, -1, -1, 0, 1, 1),
        (1, 1, 0, -1, 1, 1, 2),
        (1, 1, 1, 0, 1, 2, 2),
        (0, 0, -1, -1, 0, 1, 2),
        (0, -1, -1, -2, -1, 0, 1),
        (-1, -1, -2, -2, -2, -1, 0),
    )
    return QuantumSeed.build(GR25_NAMES, B, L, mutable_rows=(1, 2))


N2_NAMES = ("D15", "D14", "D13", "D23", "D34", "D45")


def _n2_seed():
    B = (
        (-1, 0),  # D15
        (0, -1),  # D14 (mutable)
        (1, 0),   # D13 (mutable)
        (0, -1),  # D23
        (-1, 1),  # D34
        (1, 0),   # D45
    )
    L = (
        (0, -1, -1, 0, -1, 0),
        (1, 0, -1, 0, 0, 0),
        (1, 1, 0, 1, 0, 1),
        (0, 0, -1, 0, 0, 1),
        (1, 0, 0, 0, 0, 1),
        (0, 0, -1, -1, -1, 0),
    )
    return QuantumSeed.build(N2_NAMES, B, L, mutable_rows=(1, 2))


N12_NAMES = ("D15", "D14", "D13", "D23", "D34", "D45", "D56")


def _n12_seed():
    B = (
        (0, -1, 0),   # D15 (mutable)
        (1, 0, -1),   # D14 (mutable)
        (0, 1, 0),    # D13 (mutable)
        (0, 0, -1),   # D23
        (0, -1, 1),   # D34
        (-1, 1, 0),   # D45
        (1, 0, 0),    # D56
    )
    L = (
        (0, -1, -1, 0, -1, 0, -1),
        (1, 0, -1, 0, 0, 0, 0),
        (1, 1, 0, 1, 0, 1, 0),
        (0, 0, -1, 0, 0, 1, 1),
        (1, 0, 0, 0, 0, 1, 1),
        (0, 0, -1, -1, -1, 0, 0),
        (1, 0, 0, -1, -1, 0, 0),
    )
    return QuantumSeed.build(N12_NAMES, B, L, mutable_rows=(0, 1, 2))


def projective_seed(n: int) -> QuantumSeed:
    """Rank-0 seed on n+1 frozen variables with x_i x_j = q x_j x_i for i < j."""
    if n < 0:
        raise ValueError("projective(n) needs n >= 0")
    m = n + 1
    names = tuple(f"x{i}" for i in range(m))
    B = tuple(() for _ in range(m))
    L = tuple(tuple(1 if i < j else -1 if i > j else 0 for j in range(m)) for i in range(m))
    return QuantumSeed.build(names, B, L, mutable_rows=())


# -- algebras ------------------------------------------------------------

def _cq_sl2():
    P = Presentation(("a", "b", "c", "d"), name="cq_sl2")
    for rel in ("[b,c]", "[a,b]_q", "[a,c]_q", "[d,b]_{q^-1}", "[d,c]_{q^-1}"):
        P.add_relation(rel)
    P.add_relation("a*d - 1 - q*b*c")
    P.add_relation("d*a - 1 - q^-1*b*c")
    return P


def _cq_m25():
    names = [f"x{i}{j}" for i in (1, 2) for j in range(1, 6)]
    P = Presentation(names, name="cq_m25")
    for i in range(1, 6):
        for j in range(i + 1, 6):
            P.add_relation(f"[x1{i},x1{j}]_q")
            P.add_relation(f"[x2{i},x2{j}]_q")
            P.add_relation(f"[x2{i},x1{j}]")
            P.add_relation(f"[x1{i},x2{j}] - (q-q^-1)*x1{j}*x2{i}")
        P.add_relation(f"[x1{i},x2{i}]_q")
    return P


def _uqn2_g():
    names = ("g11", "g12", "g13", "g21", "g22", "g23")
    P = Presentation(names, name="uqn2_g")
    for i in range(1, 4):
        for j in range(i + 1, 4):
            P.add_relation(f"[g1{i},g1{j}]_q")
            P.add_relation(f"[g2{i},g2{j}]_q")
            P.add_relation(f"[g2{i},g1{j}]")
        P.add_relation(f"[g1{i},g2{i}]_q")
    for i in range(1, 4):
        for j in range(i + 1, 4):
            text = f"[g1{i},g2{j}] - (q-q^-1)*g1{j}*g2{i}"
            P.add_relation(text, note=f"adjoined: {text} = 0", adjoined=True)
    return P


def _uqn12_b():
    names = ("b12", "b23", "b24", "b25")
    P = Presentation(names, name="uqn12_b")
    for i in range(3, 6):
        for j in range(i + 1, 6):
            P.add_relation(f"[b2{i},b2{j}]_q")
    for k in range(3, 6):
        P.add_relation(f"[b12,[b12,b2{k}]_q]_{{q^-1}}")
        P.add_relation(f"[b2{k},[b2{k},b12]_q]_{{q^-1}}")
    for i in range(3, 6):
        for j in range(i + 1, 6):
            text = f"[b2{i},[b2{j},b12]_q]"
            P.add_relation(text, note=f"adjoined: {text} = 0", adjoined=True)
    return P


def _sym(n):
    names = tuple(f"x{i}" for i in range(n + 1))
    P = Presentation(names, name=f"sym({n})")
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            P.add_relation(f"[x{i},x{j}]_q")
    return P


_ALGEBRAS = {"cq_sl2": _cq_sl2, "cq_m25": _cq_m25, "uqn2_g": _uqn2_g, "uqn12_b": _uqn12_b}

_PROJ = re.compile(r"^\s*projective\s*\(\s*(\d+)\s*\)\s*$")


def builtin_algebra(name: str) -> Presentation:
    m = re.match(r"^sym\((\d+)\)$", name.strip())
    if m:
        return _sym(int(m.group(1)))
    try:
        return _ALGEBRAS[name]()
    except KeyError:
        raise UnknownExample(
            f"unknown algebra {name!r}; choose from {sorted(_ALGEBRAS)}"
        ) from None


# -- realizations --------------------------------------------------------

def _minor_table(rows, columns, sign=+1, scale=ONE):
    """{'Dij': scale * minor} over 1-based column labels."""
    out = {}
    for a in range(len(columns)):
        for b in range(a + 1, len(columns)):
            label = f"D{columns[a]}{columns[b]}"
            out[label] = quantum_minor(rows, a, b, sign).scale(scale)
    return out


def _sl2_bundle():
    P = _cq_sl2()
    g = P.gens()
    real = {"a": g["a"], "b": g["b"], "c": g["c"]}
    table = (
        TableEntry("mu1", (0,), "X1*X1' = 1 + q*X2*X3", ((0, {}), (2, {1: 1, 2: 1})), "d"),
    )
    identities = (
        ("a*d = 1 + q*b*c", P.element("a*d"), P.element("1 + q*b*c")),
        ("d*a = 1 + q^-1*b*c", P.element("d*a"), P.element("1 + q^-1*b*c")),
    )
    return ExampleBundle(
        "sl2", _sl2_seed(), P, real,
        expected_variables={"a": g["a"], "d": g["d"], "b": g["b"], "c": g["c"]},
        expected={"diagonal": (2,), "vertices": 2, "directed_edges": 2,
                  "mutable": 2, "frozen": 2, "type": "A1",
                  "roots": {"a": (-1,), "d": (1,)}},
        table=table, identities=identities,
    )


def _gr25_bundle():
    P = _cq_m25()
    g = P.gens()
    rows = ([g[f"x1{j}"] for j in range(1, 6)], [g[f"x2{j}"] for j in range(1, 6)])
    minors = _minor_table(rows, range(1, 6))
    real = {n: minors[n] for n in GR25_NAMES}
    table = (
        TableEntry("mu2", (1,), "X2*X2' = q^-1*X3*X7 + q*X1*X6",
                   ((-2, {2: 1, 6: 1}), (2, {0: 1, 5: 1})), "D35"),
        TableEntry("mu3", (2,), "X3*X3' = q^-1*X4*X6 + q*X2*X5",
                   ((-2, {3: 1, 5: 1}), (2, {1: 1, 4: 1})), "D24"),
        TableEntry("mu2 mu3", (2, 1), "X2*X2'' = q^-1*X4*X7 + q*X1*X3'",
                   ((-2, {3: 1, 6: 1}), (2, {0: 1, 2: 1})), "D25"),
    )
    return ExampleBundle(
        "gr25", _gr25_seed(), P, real,
        expected_variables=minors,
        expected={"diagonal": (2, 2), "vertices": 5, "directed_edges": 10,
                  "mutable": 5, "frozen": 5, "type": "A2",
                  "roots": {"D35": (1, 0), "D25": (1, 1), "D24": (0, 1),
                            "D14": (-1, 0), "D13": (0, -1)}},
        table=table,
    )


def _n2_bundle():
    return ExampleBundle(
        "n2minus", _n2_seed(),
        expected={"diagonal": (2, 2), "vertices": 5, "directed_edges": 10,
                  "mutable": 5, "frozen": 4, "type": "A2"},
    )


def _uqn2_bundle():
    P = _uqn2_g()
    g = P.gens()
    zero, one = QScalar.coerce(0), ONE
    # q-minors; the corner -q^-2 makes column 1 contribute g_1j exactly
    rows = (
        [zero, one, g["g11"], g["g12"], g["g13"]],
        [-qpow(-4), zero, g["g21"], g["g22"], g["g23"]],
    )
    minors = _minor_table(rows, range(1, 6), scale=qpow(2))
    real = {n: minors[n] for n in N2_NAMES}
    table = (
        TableEntry("mu2", (1,), "X2*X2' = q^-1*X3*X6 + q*X1*X5",
                   ((-2, {2: 1, 5: 1}), (2, {0: 1, 4: 1})), "D35"),
        TableEntry("mu3", (2,), "X3*X3' = X5 + q*X2*X4",
                   ((0, {4: 1}), (2, {1: 1, 3: 1})), "D24"),
        TableEntry("mu2 mu3", (2, 1), "X2*X2'' = X6 + q*X1*X3'",
                   ((0, {5: 1}), (2, {0: 1, 2: 1})), "D25",
                   note="X7 in the Gr(2,5) numbering of D45 is X6 here"),
    )
    lhs = P.element("q*g12*g11*g23 - g12*g13*g21")
    rhs = P.element("g11*g12*g23 - q^-1*g11*g13*g22 + q^2*g13*g11*g22 - q*g13*g12*g21")
    identities = (
        ("degree-7 form of the mu2 relation, with -q^-1*g11*g13*g22", lhs, rhs),
        ("degree-7 form of the mu2 relation, with -q*g11*g13*g22", lhs,
         P.element("g11*g12*g23 - q*g11*g13*g22 + q^2*g13*g11*g22 - q*g13*g12*g21")),
        ("mu2 relation through the realization",
         real["D14"] * minors["D35"],
         (real["D13"] * real["D45"]).scale(qpow(-2)) + (real["D15"] * real["D34"]).scale(qpow(2))),
        ("D13 = g11", real["D13"], g["g11"]),
        ("D14 = g12", real["D14"], g["g12"]),
        ("D24 = q*g22", minors["D24"], g["g22"].scale(qpow(2))),
        ("D25 = q*g23", minors["D25"], g["g23"].scale(qpow(2))),
    )
    return ExampleBundle(
        "uqn2minus", _n2_seed(), P, real,
        expected_variables=minors,
        expected={"diagonal": (2, 2), "vertices": 5, "directed_edges": 10,
                  "mutable": 5, "frozen": 4, "type": "A2",
                  "roots": {"D35": (1, 0), "D25": (1, 1), "D24": (0, 1),
                            "D14": (-1, 0), "D13": (0, -1)}},
        table=table, identities=identities,
        notes=("labels Dij stand for q times the q-minor of [[0,1,g11,g12,g13],[-q^-2,0,g21,g22,g23]]",),
    )


def _uqn12_bundle():
    P = _uqn12_b()
    g = P.gens()
    b12, b23, b24, b25 = g["b12"], g["b23"], g["b24"], g["b25"]
    b13, b14, b15 = (q_commutator(x, b12) for x in (b23, b24, b25))
    one, zero = ONE, QScalar.coerce(0)
    rows = (
        [one, b12.scale(ONE - qpow(4)), b13, b14, b15, zero],
        [zero, one, b23, b24, b25, one],
    )
    minors = _minor_table(rows, range(1, 7))
    real = {n: minors[n] for n in N12_NAMES}
    expected = {k: minors[k] for k in ("D46", "D36", "D35", "D25", "D24") + N12_NAMES}
    expected["q^(-1/2)*D26"] = minors["D26"].scale(qpow(-1))
    table = (
        TableEntry("mu1", (0,), "X1*X1' = q^-1*X2*X7 + X6",
                   ((-2, {1: 1, 6: 1}), (0, {5: 1})), "D46"),
        TableEntry("mu2", (1,), "X2*X2' = q^-1*X3*X6 + q*X1*X5",
                   ((-2, {2: 1, 5: 1}), (2, {0: 1, 4: 1})), "D35"),
        TableEntry("mu3", (2,), "X3*X3' = X5 + q*X2*X4",
                   ((0, {4: 1}), (2, {1: 1, 3: 1})), "D24"),
        TableEntry("mu2 mu1", (0, 1), "X2*X2'' = q^-1*X1'*X3 + X5",
                   ((-2, {0: 1, 2: 1}), (0, {4: 1})), "D36"),
        TableEntry("mu3 mu2", (1, 2), "X3*X3'' = X2' + q*X1*X4",
                   ((0, {1: 1}), (2, {0: 1, 3: 1})), "D25"),
        TableEntry("mu3 mu2 mu1", (0, 1, 2), "X3*X3''' = q^(-1/2)*X2'' + q^(1/2)*X4",
                   ((-1, {1: 1}), (1, {3: 1})), "q^(-1/2)*D26"),
    )
    identities = (
        ("X1' = b14", expected["D46"], b14),
        ("X2'' = b13", expected["D36"], b13),
        ("X3''' = q^(-1/2)*(1-q^2)*b12", expected["q^(-1/2)*D26"],
         b12.scale((ONE - qpow(4)) * qpow(-1))),
    )
    return ExampleBundle(
        "uqn12minus", _n12_seed(), P, real,
        expected_variables=expected,
        expected={"diagonal": (2, 2, 2), "vertices": 14, "directed_edges": 42,
                  "mutable": 9, "frozen": 4, "type": "A3",
                  "roots": {"D46": (1, 0, 0), "D36": (1, 1, 0), "D35": (0, 1, 0),
                            "q^(-1/2)*D26": (1, 1, 1), "D25": (0, 1, 1), "D24": (0, 0, 1),
                            "D15": (-1, 0, 0), "D14": (0, -1, 0), "D13": (0, 0, -1)}},
        table=table, identities=identities,
        notes=("three cubic relations [b2i,[b2j,b12]_q] = 0 (i<j) adjoined",),
    )


def _projective_bundle(n):
    P = _sym(n)
    seed = projective_seed(n)
    real = P.gens()
    return ExampleBundle(
        f"projective({n})", seed, P, real,
        expected_variables=dict(real),
        expected={"diagonal": (), "vertices": 1, "directed_edges": 0,
                  "mutable": 0, "frozen": n + 1, "type": "A0"},
    )


_BUNDLES = {
    "sl2": _sl2_bundle,
    "gr25": _gr25_bundle,
    "n2minus": _n2_bundle,
    "uqn2minus": _uqn2_bundle,
    "uqn12minus": _uqn12_bundle,
}

BUILTIN_NAMES = tuple(_BUNDLES) + ("projective(n)",)


def builtin_seed(name: str) -> ExampleBundle:
    """Bundle for sl2, gr25, n2minus, uqn2minus, uqn12minus or projective(n)."""
    m = _PROJ.match(name)
    if m:
        return _projective_bundle(int(m.group(1)))
    try:
        return _BUNDLES[name]()
    except KeyError:
        raise UnknownExample(
            f"unknown example {name!r}; choose from {', '.join(BUILTIN_NAMES)}"
        ) from None


def is_builtin(name: str) -> bool:
    return name in _BUNDLES or bool(_PROJ.match(name))
