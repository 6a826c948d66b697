#include <catch2/catch.hpp>

#include <envlab/fincat.hpp>
#include <envlab/refcats.hpp>

using namespace envlab;

TEST_CASE("reference categories satisfy the category laws") {
  auto inj = fin_inj(3);
  auto mono = delta_plus_inj(3);
  auto iso = fin_iso(3);
  auto fib = fiber_order_category(3);
  auto words = word_category(3);
  auto simp = delta_op(2);
  for (const FiniteCategory* C :
       {&inj.cat, &mono.cat, &iso.cat, &fib.cat, &words.cat, &simp.cat}) {
    auto rep = check_category_laws(*C);
    INFO(rep.summary());
    CHECK(rep.ok());
  }
  CHECK(check_category_laws(point_category()).ok());
  CHECK(check_category_laws(discrete_category(3)).ok());
  CHECK(check_category_laws(span_category()).ok());
  CHECK(check_category_laws(parallel_pair()).ok());
  CHECK(check_category_laws(reflexive_pair()).ok());
}

TEST_CASE("corrupting a composite breaks associativity or unit laws") {
  FiniteCategory C = fin_inj(2).cat;
  bool corrupted = false;
  for (int g = 0; g < C.num_mors() && !corrupted; ++g)
    for (int f = 0; f < C.num_mors() && !corrupted; ++f) {
      if (C.dst(f) != C.src(g)) continue;
      int h = C.compose(g, f);
      for (int h2 : C.hom(C.src(f), C.dst(g)))
        if (h2 != h) {
          C.set_comp(g, f, h2);
          corrupted = true;
          break;
        }
    }
  REQUIRE(corrupted);
  CHECK_FALSE(check_category_laws(C).ok());
}

TEST_CASE("injection counts: |hom(n,m)| in Fin-inj is m!/(m-n)!") {
  auto F = fin_inj(3);
  CHECK(F.cat.hom(2, 3).size() == 6);
  CHECK(F.cat.hom(3, 3).size() == 6);
  CHECK(F.cat.hom(3, 2).size() == 0);
  CHECK(F.cat.hom(0, 3).size() == 1);
}

TEST_CASE("monotone injection counts: |hom(n,m)| is binomial(m,n)") {
  auto D = delta_plus_inj(4);
  CHECK(D.cat.hom(2, 4).size() == 6);
  CHECK(D.cat.hom(1, 3).size() == 3);
  CHECK(D.cat.hom(4, 4).size() == 1);
  CHECK(D.cat.hom(3, 2).size() == 0);
}

TEST_CASE("bijection category is a disjoint union of symmetric groups") {
  auto B = fin_iso(4);
  CHECK(B.cat.hom(3, 3).size() == 6);
  CHECK(B.cat.hom(4, 4).size() == 24);
  CHECK(B.cat.hom(2, 3).size() == 0);
}

TEST_CASE("ordered-fiber morphism counts") {
  auto F = fiber_order_category(3);
  // n -> 1: every function, with an ordering of the single fiber: n! each
  CHECK(F.cat.hom(2, 1).size() == 2);
  CHECK(F.cat.hom(3, 1).size() == 6);
  // 1 -> 2: two functions, fibers of size <= 1
  CHECK(F.cat.hom(1, 2).size() == 2);
}

TEST_CASE("three-letter word category counts") {
  auto W = word_category(4);
  int x = obj_by_name(W.cat, "b^1a^2c^1");
  int y = obj_by_name(W.cat, "b^1a^1c^1");
  REQUIRE(x >= 0);
  REQUIRE(y >= 0);
  // b slot -> b block (1 way each), a's -> anywhere (3 ways each): 9
  CHECK(W.cat.hom(x, y).size() == 9);
}

TEST_CASE("colimit of a discrete diagram is the disjoint union") {
  SetDiagram d;
  d.add_node(2, 0, "A");
  d.add_node(3, 0, "B");
  auto c = colimit_set(d);
  CHECK(c.num_classes == 5);
}

TEST_CASE("coequalizer of the identity and a swap collapses the orbit") {
  SetDiagram d;
  d.add_node(2, 0, "X");
  d.add_node(2, 1, "Y");
  d.add_edge(0, 1, {0, 1});
  d.add_edge(0, 1, {1, 0});
  auto c = colimit_set(d);
  CHECK(c.num_classes == 1);
  CHECK(c.leg(1, 0) == c.leg(1, 1));
}

TEST_CASE("pointed colimit identifies all basepoints") {
  SetDiagram d;
  d.pointed = true;
  d.add_node(2, 0, "X");
  d.add_node(2, 0, "Y");
  auto c = colimit_set(d);
  CHECK(c.num_classes == 3);  // wedge of two two-point sets
}

TEST_CASE("empty pointed colimit is a single synthetic point") {
  SetDiagram d;
  d.pointed = true;
  auto c = colimit_set(d);
  CHECK(c.num_classes == 1);
  CHECK(c.class_rep[0].synthetic());
}

TEST_CASE("grade-bounded colimit ignores high-grade nodes") {
  SetDiagram d;
  d.add_node(2, 0, "low");
  d.add_node(5, 3, "high");
  auto c = colimit_set(d, 1);
  CHECK(c.num_classes == 2);
  CHECK(c.legs[1].empty());
}

TEST_CASE("truncated colimit reports stabilization") {
  // nodes at grades 0..3, each mapping isomorphically to the next
  SetDiagram d;
  for (int g = 0; g <= 3; ++g) d.add_node(2, g);
  for (int g = 0; g < 3; ++g) d.add_edge(g, g + 1, {0, 1});
  auto t = truncated_colimit(d, 1);
  CHECK(t.stabilized);
  CHECK(t.at_L.num_classes == 2);

  // an extra point appearing at grade 2 breaks stabilization at L=1
  SetDiagram e = d;
  e.add_node(1, 2, "extra");
  auto t2 = truncated_colimit(e, 1);
  CHECK_FALSE(t2.stabilized);
}

TEST_CASE("the colimit cocone commutes and is universal") {
  SetDiagram d;
  d.add_node(2, 0, "X");
  d.add_node(2, 0, "Y");
  d.add_edge(0, 1, {1, 1});
  auto c = colimit_set(d);
  auto cone = colimit_as_cocone(c);
  CHECK(cocone_commutes(d, cone));
  CHECK(check_cocone_universal(d, c, 3));
}

TEST_CASE("a candidate apex with an unreachable point is not universal") {
  SetDiagram d;
  d.add_node(1, 0, "X");
  Colimit fake;
  fake.num_classes = 2;  // one genuine class plus an unreachable one
  fake.class_rep = {{0, 0, 0}, {0, 0, 1}};
  fake.legs = {{0}};
  // the unreachable class leaves the mediating map unconstrained
  Cocone target;
  target.apex_size = 2;
  target.legs = {{0}};
  CHECK(mediating_map_count(fake, target, d) == 2);
  CHECK_FALSE(check_cocone_universal(d, fake, 2));
}

TEST_CASE("finality: restricting along a final inclusion preserves colimits") {
  // terminal object inclusion into the span a -> b, a -> c is not final,
  // but the inclusion of {b} into the category (a -> b) is
  FiniteCategory arrow;
  arrow.name = "arrow";
  int a = arrow.add_object("a"), b = arrow.add_object("b");
  int ia = arrow.add_identity(a), ib = arrow.add_identity(b);
  int f = arrow.add_mor(a, b, "f");
  arrow.set_comp(ia, ia, ia);
  arrow.set_comp(ib, ib, ib);
  arrow.set_comp(f, ia, f);
  arrow.set_comp(ib, f, f);
  REQUIRE(check_category_laws(arrow).ok());

  FiniteCategory pt = point_category();
  Functor incl;
  incl.src = &pt;
  incl.dst = &arrow;
  incl.obj_map = {b};
  incl.mor_map = {ib};
  REQUIRE(check_functor_laws(incl).ok());

  CatDiagram D;
  D.cat = &arrow;
  D.sizes = {3, 2};
  D.mor_maps.resize(3);
  D.mor_maps[static_cast<size_t>(ia)] = {0, 1, 2};
  D.mor_maps[static_cast<size_t>(ib)] = {0, 1};
  D.mor_maps[static_cast<size_t>(f)] = {0, 0, 1};
  REQUIRE(check_cat_diagram(D).ok());

  auto fin = finality_check(incl, D);
  CHECK(fin.iso);

  // the non-final inclusion of {a}: colim over the point is D(a) = 3, full colimit is 2
  Functor bad;
  bad.src = &pt;
  bad.dst = &arrow;
  bad.obj_map = {a};
  bad.mor_map = {ia};
  auto notfin = finality_check(bad, D);
  CHECK_FALSE(notfin.iso);
  CHECK(notfin.classes_restricted == 3);
  CHECK(notfin.classes_full == 2);
}

TEST_CASE("slice categories of the span") {
  FiniteCategory S = span_category();
  auto under_a = under_slice(S, obj_by_name(S, "a"));
  // a/S: id_a, f, g
  CHECK(under_a.cat.num_objects() == 3);
  REQUIRE(check_category_laws(under_a.cat).ok());
  auto over_b = over_slice(S, obj_by_name(S, "b"));
  // S/b: f: a -> b and id_b
  CHECK(over_b.cat.num_objects() == 2);
  REQUIRE(check_category_laws(over_b.cat).ok());
}

TEST_CASE("contractibility certificates") {
  CHECK(weak_contractibility(point_category()).certified());
  CHECK(weak_contractibility(span_category()).certified());  // a is initial
  CHECK(weak_contractibility(reflexive_pair()).certified());
  auto two = weak_contractibility(discrete_category(2));
  CHECK_FALSE(two.certified());
  CHECK(two.status == Contractibility::disconnected);
  auto par = weak_contractibility(parallel_pair());
  CHECK_FALSE(par.certified());
}

TEST_CASE("opposite is an involution on counts and reverses hom sets") {
  FiniteCategory S = span_category();
  FiniteCategory Op = opposite(S);
  REQUIRE(check_category_laws(Op).ok());
  CHECK(Op.num_objects() == S.num_objects());
  CHECK(Op.num_mors() == S.num_mors());
  CHECK(Op.hom(1, 0).size() == S.hom(0, 1).size());
  FiniteCategory Back = opposite(Op);
  CHECK(check_category_laws(Back).ok());
  CHECK(Back.hom(0, 1).size() == S.hom(0, 1).size());
}

TEST_CASE("product category and the diagonal functor") {
  FiniteCategory S = span_category();
  auto P = product_category(S, S);
  REQUIRE(check_category_laws(P.cat).ok());
  CHECK(P.cat.num_objects() == 9);
  CHECK(P.cat.num_mors() == 25);
  auto diag = diagonal_functor(S, P);
  CHECK(check_functor_laws(diag).ok());
}

TEST_CASE("full subcategories stay categories") {
  FiniteCategory R = reflexive_pair();
  auto base_only = full_subcategory(R, {true, false}, "base");
  CHECK(base_only.cat.num_objects() == 1);
  CHECK(base_only.cat.num_mors() == 1);
  auto top_only = full_subcategory(R, {false, true}, "top");
  CHECK(top_only.cat.num_mors() == 3);  // id and the two idempotents
  CHECK(check_category_laws(top_only.cat).ok());
}

TEST_CASE("reflexive pair is the two-truncated simplex shape") {
  FiniteCategory R = reflexive_pair();
  auto D = delta_op(1);
  // both have two objects; base matches [0], top matches [1]
  CHECK(R.hom(0, 1).size() == D.cat.hom(obj_by_name(D.cat, "[0]"), obj_by_name(D.cat, "[1]")).size());
  CHECK(R.hom(1, 0).size() == D.cat.hom(obj_by_name(D.cat, "[1]"), obj_by_name(D.cat, "[0]")).size());
  CHECK(R.hom(1, 1).size() == D.cat.hom(obj_by_name(D.cat, "[1]"), obj_by_name(D.cat, "[1]")).size());
}

TEST_CASE("delta-op composition spot check") {
  auto D = delta_op(2);
  REQUIRE(check_category_laws(D.cat).ok());
  // hom([1],[0]) = monotone maps [0] -> [1]: two of them
  CHECK(D.cat.hom(obj_by_name(D.cat, "[1]"), obj_by_name(D.cat, "[0]")).size() == 2);
  // hom([0],[1]) = monotone maps [1] -> [0]: just one
  CHECK(D.cat.hom(obj_by_name(D.cat, "[0]"), obj_by_name(D.cat, "[1]")).size() == 1);
}

TEST_CASE("connectivity") {
  CHECK(is_connected(span_category()));
  CHECK_FALSE(is_connected(discrete_category(2)));
}

TEST_CASE("dot export mentions every object") {
  FiniteCategory S = span_category();
  std::string dot = dot_export(S);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("a") != std::string::npos);
}

TEST_CASE("functor law checker flags a non-functor") {
  FiniteCategory S = span_category();
  Functor F;
  F.src = &S;
  F.dst = &S;
  F.obj_map = {0, 1, 2};
  F.mor_map.resize(static_cast<size_t>(S.num_mors()));
  for (int m = 0; m < S.num_mors(); ++m) F.mor_map[static_cast<size_t>(m)] = m;
  REQUIRE(check_functor_laws(F).ok());
  // redirect f: a -> b to g: a -> c without changing the object map
  int f = mor_by_name(S, "f"), g = mor_by_name(S, "g");
  F.mor_map[static_cast<size_t>(f)] = g;
  CHECK_FALSE(check_functor_laws(F).ok());
}
