import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kscontext.catalog import (
    BUILTIN_GRAPH_NAMES,
    VectorSetSyntaxError,
    builtin_graph,
    builtin_seven_context,
    parse_scalar,
    parse_vector_set,
    ray_by_label,
    render_vector_set,
    single_basis,
    to_dot,
)
from kscontext.contextuality import ContextSetError, NonOrthogonalError, validate_context_set
from kscontext.eisenstein import W, W2, EisensteinScalar, Ket, format_scalar, ray_equal
from kscontext.graph import clique_number, independence_number, is_isomorphic, johnson_graph


@pytest.mark.parametrize(
    "text, value",
    [
        ("1", EisensteinScalar(1)),
        ("-w", -W),
        ("w^2", W2),
        ("1/2*w^2", W2 * Fraction(1, 2)),
        ("1+2w", EisensteinScalar(1, 2)),
        ("w + w^2", EisensteinScalar(-1)),
        ("  3 ", EisensteinScalar(3)),
        ("-2/3", EisensteinScalar(Fraction(-2, 3))),
    ],
)
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


scalars = st.builds(
    EisensteinScalar,
    st.fractions(min_value=-9, max_value=9, max_denominator=7),
    st.fractions(min_value=-9, max_value=9, max_denominator=7),
)


@given(scalars)
def test_format_then_parse_is_identity(x):
    assert parse_scalar(format_scalar(x)) == x


def test_parse_ket_with_cube_roots():
    cs = parse_vector_set("basis X: (1,1,1); (1,w,w^2); (1,w^2,w)")
    assert cs.rays[1] == Ket([1, W, W2])
    assert any(r == Ket([0, 1, W, W2, 0, 1]) for r in builtin_seven_context().rays)


def test_builtin_labels_and_specific_rays():
    cs = builtin_seven_context()
    assert len(cs.rays) == 21
    assert ray_equal(ray_by_label(cs, "12"), Ket([1, 0, 0, 0, 0, 0]))
    assert ray_equal(ray_by_label(cs, "67"), Ket([1, 1, 1, 1, 0, 0]))
    assert ray_equal(ray_by_label(cs, "23"), Ket([0, 0, 1, 1, 1, 1]))
    for label, ray in zip(cs.ray_labels, cs.rays):
        i, j = int(label[0]) - 1, int(label[1]) - 1
        assert cs.contexts_of_ray(cs.rays.index(ray)) == [i, j]


def test_round_trip_of_builtin_text():
    cs = builtin_seven_context()
    again = parse_vector_set(render_vector_set(cs))
    assert again == cs


def test_comments_blank_lines_and_crlf():
    text = "# header\r\n\r\nbasis A: (1,0); (0,1)  # trailing\r\nbasis B: (1,1); (1,-1)\r\n"
    cs = parse_vector_set(text)
    assert cs.context_names == ("A", "B") and len(cs.rays) == 4


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("basis B1 (1,0)", 1, 1),
        ("basis B1: (1,0); (0,x)", 1, 21),
        ("basis B1: (1,0); (0,1)\nbasis B1: (1,1); (1,-1)", 2, 7),
        ("basis B1: (1,0); (0,1,0)", 1, 18),
        ("basis B1: 1,0", 1, 11),
        ("basis B1: (0,0)", 1, 11),
        ("basis B1: (1 2,0)", 1, 14),
        ("basis B1: (1*,0)", 1, 12),
        ("# ok\nbasis B1:", 2, 10),
    ],
)
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(VectorSetSyntaxError) as info:
        parse_vector_set(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_empty_input():
    with pytest.raises(ContextSetError):
        parse_vector_set("# nothing\n\n")


def test_non_orthogonal_input():
    with pytest.raises(NonOrthogonalError):
        parse_vector_set("basis B1: (1,1,0,0,0,0); (0,1,0,0,0,0); (0,0,1,0,0,0); (0,0,0,1,0,0); (0,0,0,0,1,0); (0,0,0,0,0,1)")


def test_single_entry_mutations_break_orthogonality():
    # changing one nonzero entry of a vector with several nonzero entries
    # (to another cube-root phase or to 2) must spoil orthogonality
    rng = random.Random(17)
    cs = builtin_seven_context()
    targets = [(c, r) for c, ctx in enumerate(cs.contexts) for r in ctx if sum(1 for x in cs.rays[r] if x) > 1]
    for _ in range(40):
        c, r = rng.choice(targets)
        ray = list(cs.rays[r])
        pos = rng.choice([i for i, x in enumerate(ray) if x])
        choices = [x for x in (EisensteinScalar(1), W, W2, EisensteinScalar(2)) if x != ray[pos]]
        ray[pos] = rng.choice(choices)
        bases = [[cs.rays[k] for k in ctx] for ctx in cs.contexts]
        bases[c][cs.contexts[c].index(r)] = Ket(ray)
        lines = [
            f"basis B{i + 1}: " + "; ".join("(" + ",".join(format_scalar(x) for x in v) + ")" for v in b)
            for i, b in enumerate(bases)
        ]
        with pytest.raises(NonOrthogonalError):
            parse_vector_set("\n".join(lines))


def test_single_basis():
    cs = single_basis(3)
    rep = validate_context_set(cs)
    assert (rep.dimension, rep.contexts, rep.rays) == (3, 1, 3) and not rep.pair_labeling


@pytest.mark.parametrize("name", BUILTIN_GRAPH_NAMES)
def test_builtin_graphs_load(name):
    g, labels = builtin_graph(name)
    assert g.n > 0
    assert labels is None or len(labels) == g.n


def test_builtin_graph_values():
    g, labels = builtin_graph("seven-context")
    assert is_isomorphic(g, johnson_graph(7, 2)) and labels[0] == "12"
    petersen, _ = builtin_graph("petersen")
    assert (petersen.n, petersen.num_edges(), independence_number(petersen)) == (10, 15, 4)
    assert clique_number(builtin_graph("k6")[0]) == 6
    with pytest.raises(KeyError):
        builtin_graph("nope")


def test_dot_export():
    g, labels = builtin_graph("seven-context")
    dot = to_dot(g, labels, "seven")
    assert dot.startswith("graph seven {")
    assert dot.count(" -- ") == 105
    assert '0 [label="12"]' in dot
    assert to_dot(builtin_graph("pentagon")[0]).count(" -- ") == 5
