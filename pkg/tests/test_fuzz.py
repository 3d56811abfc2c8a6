import random

from graphdivide.dsl import parse
from graphdivide.fuzz import check_instance, run_fuzz, with_extra_double
from graphdivide.generate import instance_rng, random_product, random_products
from graphdivide.link_invariants import load_reference_table
from graphdivide.tangles import Kind, assemble_graph, count_features


def test_generator_respects_limits():
    for p in random_products(3, 300):
        c = count_features(p)
        assert sum(t.kind is not Kind.IDENTITY for t in p.tangles) <= 12
        assert c.delta <= 6


def test_generator_trees():
    for p in random_products(5, 100, trees_only=True):
        assert assemble_graph(p).is_embedded_tree


def test_generator_is_reproducible():
    assert random_product(instance_rng(42, 17)) == random_product(instance_rng(42, 17))
    assert random_product(random.Random(1)) == random_product(random.Random(1))


def test_extra_double():
    q = with_extra_double(parse("( | )"))
    assert count_features(q).delta == 1
    assert with_extra_double(parse("<+ | >+")) is None


def test_check_instance_clean():
    assert check_instance(parse("( | X | >+ >+")) == []
    assert check_instance(parse("<+ | B+3 | >+ >+"), load_reference_table()) == []


def test_small_fuzz_run():
    s = run_fuzz(seed=1, count=10)
    assert s.passed == 10
    assert next(iter(s.lines())).startswith("fuzz seed=1: 10/10 pass")


def test_trees_only_fuzz_gives_unknots():
    s = run_fuzz(seed=2, count=10, trees_only=True)
    assert s.passed == 10, list(s.lines())
