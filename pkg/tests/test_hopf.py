import pytest

from prequant.algebra import (GeneratorSpec, Presentation, SQUARE_LINKED, TRUNCATED,
                              TensorElement, tensor_mul)
from prequant.catalog import GroupId, presentation
from prequant.errors import MissingTableEntry
from prequant.hopf import CoproductTable, HopfAlgebra, verify_axioms


def pu(p, n=None):
    return presentation(GroupId("PU", n or p), p).hopf


def test_coproduct_of_x3_in_pu3():
    h = pu(3)
    P = h.pres
    assert h.coproduct(P.gen("x3")) == P.tensor("x3⊗1 + 1⊗x3 + x1⊗y2")
    assert h.reduced_coproduct(P.gen("x3")) == P.tensor("x1⊗y2")


def test_coproduct_is_multiplicative_on_a_product():
    h = pu(3)
    P = h.pres
    x1, y2 = P.gen("x1"), P.gen("y2")
    want = P.tensor("x1·y2⊗1 + x1⊗y2 + y2⊗x1 + 1⊗x1·y2")
    assert h.coproduct(x1 * y2) == want


def test_binomial_expansion_of_y_power():
    # Δ(y^2) = y^2⊗1 + 2 y⊗y + 1⊗y^2 mod 3
    h = pu(3)
    P = h.pres
    assert h.coproduct(P.element("y2^2")) == P.tensor("y2^2⊗1 + 2 y2⊗y2 + 1⊗y2^2")


def test_antipode_x3():
    h = pu(3)
    P = h.pres
    # c*(x3) = -x3 + x1 y2
    assert h.antipode(P.gen("x3")) == P.element("-x3 + x1*y2")
    assert h.antipode(P.gen("x1")) == P.element("-x1")
    assert h.antipode(P.unit()) == P.unit()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_phi_star_x3_pu_p(p):
    h = pu(p)
    P = h.pres
    assert h.phi_star(P.gen("x3")) == P.tensor("x1⊗y2 - y2⊗x1")


def test_phi_star_pe6_orientation():
    h = presentation(GroupId("PE6"), 3).hopf
    P = h.pres
    assert h.phi_star(P.gen("x3")) == P.tensor("y2⊗x1 - x1⊗y2")


def test_phi_star_po_odd():
    h = presentation(GroupId("PO_even", 5), 2).hopf
    P = h.pres
    assert h.phi_star(P.gen("u3")) == P.tensor("v1⊗u2 + u2⊗v1")


def test_phi_star_po_0_mod_4():
    h = presentation(GroupId("PO_even", 4), 2).hopf
    P = h.pres
    want = P.tensor("u1⊗v1^2 + u2⊗v1 + v1^2⊗u1 + v1⊗u2")
    assert h.phi_star(P.gen("u3")) == want


def test_phi_star_vanishes_on_primitives():
    for g in [GroupId("SO", 9), GroupId("PSp", 4), GroupId("Ss", 2), GroupId("PU", 4)]:
        h = presentation(g, 2).hopf
        for gen in h.pres.generators:
            x = h.pres.gen(gen.name)
            if h.is_primitive(x):
                assert not h.phi_star(x), (g, gen.name)


def test_phi_star_linear():
    h = pu(5)
    P = h.pres
    a, b = P.gen("x3"), P.gen("x5")
    assert h.phi_star(a + b.scale(2)) == h.phi_star(a) + h.phi_star(b).scale(2)


def test_missing_table_entry():
    P = Presentation(3, [GeneratorSpec("x1", 1), GeneratorSpec("x3", 3)])
    table = CoproductTable(P, {"x1": None})
    h = HopfAlgebra(table)
    with pytest.raises(MissingTableEntry):
        h.coproduct(P.gen("x3"))


def test_table_validation():
    P = Presentation(3, [GeneratorSpec("x1", 1), GeneratorSpec("y2", 2, TRUNCATED, 3),
                         GeneratorSpec("x3", 3)])
    table = CoproductTable.primitive(P)
    with pytest.raises(ValueError):
        table["x3"] = P.tensor("x3⊗1")
    with pytest.raises(ValueError):
        table["x3"] = P.tensor("x1⊗x1")


def test_axiom_suite_detects_a_broken_table():
    # a non-coassociative rule: mubar(x5) = x3⊗y2 without the x1⊗y2^2 partner
    P = Presentation(3, [GeneratorSpec("x1", 1), GeneratorSpec("y2", 2, TRUNCATED, 3),
                         GeneratorSpec("x3", 3), GeneratorSpec("x5", 5)])
    table = CoproductTable.primitive(P)
    table["x3"] = P.tensor("x1⊗y2")
    table["x5"] = P.tensor("x3⊗y2")
    rep = verify_axioms(HopfAlgebra(table))
    assert not rep.ok
    assert any(f.startswith("coassociativity: x5") for f in rep.failures)


def test_square_linked_algebra_map():
    # PU(2) at p = 2: x1^2 = y2 and Δ(x1)^2 = Δ(y2)
    h = presentation(GroupId("PU", 2), 2).hopf
    P = h.pres
    d = h.coproduct(P.gen("x1"))
    assert tensor_mul(d, d) == h.coproduct(P.gen("y2"))


@pytest.mark.parametrize("g,p", [(GroupId("PU", 9), 3), (GroupId("PU", 12), 2),
                                 (GroupId("SUmodZk", 12, 6), 3), (GroupId("PSp", 6), 2),
                                 (GroupId("PO_even", 6), 2), (GroupId("Ss", 4), 2),
                                 (GroupId("PE6"), 3), (GroupId("PE7"), 2)])
def test_axiom_suite_on_catalog_sample(g, p):
    rep = verify_axioms(presentation(g, p).hopf)
    assert rep.ok, rep.failures
    assert rep.checks["coassociativity"] > 0


@pytest.mark.parametrize("g,p", [(GroupId("PE6"), 3), (GroupId("PE7"), 2), (GroupId("PSp", 8), 2),
                                 (GroupId("PU", 5), 5)])
def test_axiom_suite_above_default_cap(g, p):
    # the higher-degree coproduct formulas are consistent too
    rep = verify_axioms(presentation(g, p, degree_cap=16).hopf)
    assert rep.ok, rep.failures[:5]


def test_apply_factorwise_zero_keeps_arity():
    h = pu(3)
    z = TensorElement(h.pres, 2, {})
    out = h.apply_factorwise(z, [h.mono_coproduct, h.mono_coproduct])
    assert out.arity == 4 and not out
