import random

import pytest

from fibword import (
    Alphabet,
    DomainError,
    Morphism,
    Word,
    adjacency_matrix,
    binary_alphabet,
    compose_sturmian,
    digit_alphabet,
    fibonacci_morphism,
    fixed_point_prefix,
    identity_morphism,
    mbonacci_alphabet,
    mbonacci_morphism,
    sturmian_generator,
    ternary_alphabet,
    thue_morse_morphism,
    tribonacci_morphism,
)


def test_alphabet_basics():
    a = Alphabet("abc")
    assert len(a) == 3
    assert a.index("b") == 1
    assert a.label(2) == "c"
    assert a.as_index("c") == 2
    assert a.as_index(0) == 0


def test_alphabet_rejects_bad_labels():
    with pytest.raises(DomainError):
        Alphabet("aab")  # duplicate
    # unknown symbol lookups fail loudly
    with pytest.raises(DomainError):
        Alphabet("ab").index("z")


def test_digit_alphabet_range():
    assert digit_alphabet(16).labels[10] == "a"
    with pytest.raises(DomainError):
        digit_alphabet(37)
    with pytest.raises(DomainError):
        digit_alphabet(1)


def test_word_roundtrip_and_slicing():
    ab = binary_alphabet()
    w = Word.from_string("abab", ab)
    assert str(w) == "abab"
    assert len(w) == 4
    assert w[1] == 1  # integer index
    assert str(w[1:3]) == "ba"
    assert isinstance(w[1:3], Word)
    assert w.count("a") == 2
    assert w.count(1) == 2


def test_word_concat_requires_same_alphabet():
    u = Word.from_string("ab", binary_alphabet())
    v = Word.from_string("c", ternary_alphabet())
    with pytest.raises(DomainError):
        u + v


def test_word_rejects_out_of_range_indices():
    with pytest.raises(DomainError):
        Word(binary_alphabet(), bytes([0, 1, 2]))


def test_morphism_from_rules_and_apply():
    phi = Morphism.from_rules("a->ab,b->a")
    w = Word.from_string("ab", binary_alphabet())
    assert str(phi.apply(w)) == "aba"
    assert phi.rules_text() == "a->ab,b->a"
    assert phi.rules_dict() == {"a": "ab", "b": "a"}


def test_morphism_is_a_homomorphism():
    """apply(uv) must equal apply(u) + apply(v) for random words."""
    rng = random.Random(7)
    tern = ternary_alphabet()
    sigma = Morphism.from_rules("a->ab,b->ac,c->a")
    for _ in range(200):
        u = Word.from_indices(tern, (rng.randrange(3) for _ in range(rng.randrange(8))))
        v = Word.from_indices(tern, (rng.randrange(3) for _ in range(rng.randrange(8))))
        assert sigma.apply(u + v) == sigma.apply(u) + sigma.apply(v)


def test_morphism_composition_order():
    # then() applies the receiver first
    phi = sturmian_generator("phi")
    ex = sturmian_generator("E")
    composed = phi.then(ex)
    w = Word.from_string("ab", binary_alphabet())
    assert composed.apply(w) == ex.apply(phi.apply(w))


def test_compose_sturmian_matches_by_hand():
    # phi then E: a -> ab -> ba, b -> a -> b
    m = compose_sturmian(["phi", "E"])
    assert m.rules_dict() == {"a": "ba", "b": "b"}
    assert compose_sturmian([]) == identity_morphism(binary_alphabet())


def test_sturmian_generator_names():
    assert sturmian_generator("E").rules_dict() == {"a": "b", "b": "a"}
    assert sturmian_generator("phi").rules_dict() == {"a": "ab", "b": "a"}
    assert sturmian_generator("phit").rules_dict() == {"a": "ba", "b": "a"}
    with pytest.raises(DomainError):
        sturmian_generator("nope")


def test_fibonacci_fixed_point_prefix():
    w = fixed_point_prefix(fibonacci_morphism(), "a", 13)
    assert str(w) == "abaababaabaab"


def test_fixed_point_is_coherent_under_the_morphism():
    """sigma(prefix) must again be a prefix of the fixed point."""
    for morph in (fibonacci_morphism(), tribonacci_morphism(), thue_morse_morphism()):
        seed = morph.source.label(0)
        w = fixed_point_prefix(morph, seed, 400)
        image = morph.apply(w)
        assert image == fixed_point_prefix(morph, seed, len(image))


def test_fixed_point_needs_prolongable_seed():
    # b -> a does not start with b, so iteration from b cannot converge
    with pytest.raises(DomainError):
        fixed_point_prefix(fibonacci_morphism(), "b", 10)
    # image of the seed must be longer than one symbol, or iteration stalls
    fix = Morphism.from_rules("a->a,b->ab")
    with pytest.raises(DomainError):
        fixed_point_prefix(fix, "a", 5)


def test_fixed_point_prefix_lengths():
    for n in (0, 1, 2, 50):
        assert len(fixed_point_prefix(fibonacci_morphism(), "a", n)) == n


def test_tribonacci_iterates():
    sigma = tribonacci_morphism()
    w = Word.from_string("a", ternary_alphabet())
    seen = []
    for _ in range(4):
        w = sigma.apply(w)
        seen.append(str(w))
    assert seen == ["ab", "abac", "abacaba", "abacabaabacab"]


def test_mbonacci_morphism_small_orders():
    m3 = mbonacci_morphism(3)
    assert m3.rules_dict() == {"1": "12", "2": "13", "3": "1"}
    w = Word.from_string("1", mbonacci_alphabet(3))
    for expected in ("12", "1213", "1213121", "1213121121312"):
        w = m3.apply(w)
        assert str(w) == expected
    # order 2 is the Fibonacci substitution with digit labels
    assert mbonacci_morphism(2).rules_dict() == {"1": "12", "2": "1"}
    with pytest.raises(DomainError):
        mbonacci_morphism(1)


def test_adjacency_matrix_values():
    assert adjacency_matrix(fibonacci_morphism()) == [[1, 1], [1, 0]]
    assert adjacency_matrix(tribonacci_morphism()) == [[1, 1, 0], [1, 0, 1], [1, 0, 0]]


def test_adjacency_matrix_tracks_image_lengths():
    """Row sums of the k-th matrix power are the lengths of the k-th images."""
    sigma = tribonacci_morphism()
    mat = adjacency_matrix(sigma)

    def mat_mul(x, y):
        n = len(x)
        return [[sum(x[i][t] * y[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)]

    power = [[int(i == j) for j in range(3)] for i in range(3)]
    w = Word.from_string("a", ternary_alphabet())
    for _ in range(8):
        power = mat_mul(power, mat)
        w = sigma.apply(w)
        assert len(w) == sum(power[0])


def test_identity_morphism_fixes_everything():
    ident = identity_morphism(ternary_alphabet())
    w = Word.from_string("cabcab", ternary_alphabet())
    assert ident.apply(w) == w


def test_morphism_rejects_erasing_rules():
    with pytest.raises(DomainError):
        Morphism.from_rules("a->,b->a")


def test_morphism_rule_parse_errors():
    with pytest.raises(DomainError):
        Morphism.from_rules("a=ab")
    with pytest.raises(DomainError):
        Morphism.from_rules("a->ab,a->a")
