#include <catch2/catch.hpp>

#include <memory>

#include <envlab/freealg.hpp>

using namespace envlab;

namespace {
int find_op(const OperadSpec& O, const std::string& nm) {
  for (int i = 0; i < O.num_ops(); ++i)
    if (O.op_name(i) == nm) return i;
  return -1;
}
OperadPtr share(OperadSpec O) { return std::make_shared<const OperadSpec>(std::move(O)); }

int class_labeled(const TruncatedAlgebra& T, const std::string& lab) {
  for (int c = 0; c < T.num_classes; ++c)
    if (T.label[static_cast<size_t>(c)] == lab) return c;
  return -1;
}

// free pointed associative algebra on `letters` generators
FreeAlgebra james(int letters, int L) {
  auto e0 = share(builder_e0(L + 1));
  auto assoc = share(builder_assoc(L + 1));
  return free_algebra(canonical_map(e0, assoc), e0_algebra(e0, letters + 1, TargetKind::ptdfinset),
                      L);
}

FreeAlgebra symmetric_product(int letters, int L) {
  auto e0 = share(builder_e0(L + 1));
  auto com = share(builder_com(L + 1));
  return free_algebra(canonical_map(e0, com), e0_algebra(e0, letters + 1, TargetKind::ptdfinset),
                      L);
}
}  // namespace

TEST_CASE("free associative algebra on one pointed generator lists the words") {
  FreeAlgebra F = james(1, 3);
  REQUIRE(F.alg.num_classes == 4);
  CHECK_FALSE(F.alg.stabilized);
  CHECK(class_labeled(F.alg, "\xce\xb5") == 0);
  CHECK(class_labeled(F.alg, "a") >= 0);
  CHECK(class_labeled(F.alg, "aa") >= 0);
  CHECK(class_labeled(F.alg, "aaa") >= 0);
  for (int c = 0; c < 4; ++c) CHECK(F.alg.grade[static_cast<size_t>(c)] == c);

  // concatenation: a * aa = aaa
  int w01 = find_op(*F.alg.operad, "w01");
  int a = class_labeled(F.alg, "a"), aa = class_labeled(F.alg, "aa");
  CHECK(F.alg.apply(w01, {a, aa}) == class_labeled(F.alg, "aaa"));
  // the truncation refuses products past its level
  CHECK_FALSE(F.alg.defined(w01, {aa, aa}));
  CHECK_THROWS_AS(F.alg.apply(w01, {aa, aa}), Error);

  CHECK(james_word_match(F, 1).ok);
}

TEST_CASE("word counts of free associative truncations") {
  // one generator: L+1 words; two generators: 2^(L+1)-1 words
  CHECK(james(1, 2).alg.num_classes == 3);
  CHECK(james(1, 3).alg.num_classes == 4);
  CHECK(james(1, 4).alg.num_classes == 5);
  CHECK(james(2, 2).alg.num_classes == 7);
  FreeAlgebra F = james(2, 3);
  CHECK(F.alg.num_classes == 15);
  CHECK(james_word_match(F, 2).ok);
}

TEST_CASE("free commutative truncations list multisets") {
  FreeAlgebra F = symmetric_product(2, 2);
  CHECK(F.alg.num_classes == 6);  // eps, a, b, aa, ab, bb
  CHECK(symmetric_product_match(F, 2).ok);
  CHECK(symmetric_product(2, 3).alg.num_classes == 10);
  FreeAlgebra G = symmetric_product(2, 4);
  CHECK(G.alg.num_classes == 15);
  CHECK(symmetric_product_match(G, 2).ok);
  // a single basepoint generates nothing: one class at every level
  FreeAlgebra H = symmetric_product(0, 2);
  CHECK(H.alg.num_classes == 1);
  CHECK(H.alg.stabilized);
}

TEST_CASE("truncated algebras satisfy the laws wherever defined") {
  FreeAlgebra F = james(1, 3);
  auto rep = check_truncated_laws(F.alg, 2);
  INFO(rep.summary());
  CHECK(rep.ok());
  CHECK(rep.checked > 1000);
  FreeAlgebra G = symmetric_product(2, 2);
  auto rep2 = check_truncated_laws(G.alg, 3);
  INFO(rep2.summary());
  CHECK(rep2.ok());
}

TEST_CASE("generators satisfy the unit triangle") {
  auto e0 = share(builder_e0(4));
  auto assoc = share(builder_assoc(4));
  OperadMorphism p = canonical_map(e0, assoc);
  AlgebraTable A = e0_algebra(e0, 2, TargetKind::ptdfinset);
  FreeAlgebra F = free_algebra(p, A, 3);
  auto rep = unit_triangle(p, A, F);
  INFO(rep.summary());
  CHECK(rep.ok());
}

TEST_CASE("classical symmetrization counts operations against tuples") {
  auto com = share(builder_com(4));
  auto assoc = share(builder_assoc(3));
  auto triv = share(builder_triv(3));
  auto e0 = share(builder_e0(3));
  TruncatedAlgebra C = classic_free(com, 2, TargetKind::finset, 3);
  CHECK(C.num_classes == 10);  // multisets of size <= 3 on two letters
  CHECK_FALSE(C.stabilized);
  TruncatedAlgebra As = classic_free(assoc, 2, TargetKind::finset, 2);
  CHECK(As.num_classes == 7);  // words of length <= 2
  CHECK_FALSE(As.stabilized);
  TruncatedAlgebra Tv = classic_free(triv, 2, TargetKind::finset, 2);
  CHECK(Tv.num_classes == 2);  // only the unary identity contributes
  CHECK(Tv.stabilized);
  TruncatedAlgebra E = classic_free(e0, 2, TargetKind::finset, 2);
  CHECK(E.num_classes == 3);  // a detached constant plus the two letters
  CHECK(E.stabilized);
}

TEST_CASE("envelope and classical routes agree") {
  for (int xs : {1, 2, 3}) {
    CompareFree R = compare_free(share(builder_com(3)), xs, 2);
    INFO("com |X|=" << xs << ": " << R.cmp.obstruction);
    CHECK(R.cmp.iso);
  }
  CompareFree R = compare_free(share(builder_assoc(3)), 2, 2);
  CHECK(R.cmp.iso);
  CHECK(R.cmp.classic_classes == 7);
  CompareFree R2 = compare_free(share(builder_com(4)), 2, 3);
  CHECK(R2.cmp.iso);
  CHECK(R2.cmp.classic_classes == 10);
  CHECK(compare_free(share(builder_e0(3)), 2, 2).cmp.iso);
  CHECK(compare_free(share(builder_triv(3)), 2, 2).cmp.iso);
}

TEST_CASE("a corrupted symmetric action breaks the route comparison") {
  OperadSpec bad = builder_assoc(3);
  int w01 = find_op(bad, "w01");
  bad.set_act(w01, {1, 0}, w01);  // pretend the transposition fixes the word
  TruncatedAlgebra TC = classic_free(share(std::move(bad)), 2, TargetKind::finset, 2);

  auto honest = share(builder_assoc(3));
  ProductOperad P = product_operad(*honest, builder_triv(3));
  OperadMorphism pr = product_projection(P, 0);
  AlgebraTable A;
  A.name = "letters2";
  A.operad = P.op;
  A.kind = TargetKind::finset;
  A.carrier = {2};
  for (int op = 0; op < P.op->num_ops(); ++op)
    A.set_action_pointwise(op, [](const std::vector<int>& a) { return a[0]; });
  FreeAlgebra FA = free_algebra(pr, A, 2);

  FreeComparison cmp = compare_free_routes(TC, FA);
  CHECK_FALSE(cmp.iso);
  CHECK_FALSE(cmp.obstruction.empty());
}

TEST_CASE("the free algebra along an identity map returns the algebra") {
  auto com = share(builder_com(3));
  std::vector<std::vector<int>> mx = {{0, 1, 2}, {1, 1, 2}, {2, 2, 2}};
  AlgebraTable M = monoid_algebra(com, mx, 0, TargetKind::finset, "chain3");
  FreeAlgebra F = free_algebra(identity_morphism(com), M, 2);
  CHECK(F.alg.stabilized);
  MatchReport R = truncation_matches_algebra(F, M);
  INFO(R.obstruction);
  CHECK(R.match);
}

TEST_CASE("generator-only diagrams agree with full morphism closures") {
  auto e0 = share(builder_e0(3));
  auto assoc = share(builder_assoc(3));
  OperadMorphism p = canonical_map(e0, assoc);
  AlgebraTable A = e0_algebra(e0, 3, TargetKind::ptdfinset);
  FreeAlgebra gen = free_algebra(p, A, 2, true);
  FreeAlgebra full = free_algebra(p, A, 2, false);
  CHECK(gen.alg.num_classes == full.alg.num_classes);
  CHECK(gen.alg.grade == full.alg.grade);
  CHECK(gen.alg.ops == full.alg.ops);
}

TEST_CASE("maps of generators induce maps of free algebras") {
  auto e0 = share(builder_e0(3));
  auto com = share(builder_com(3));
  OperadMorphism p = canonical_map(e0, com);
  AlgebraTable A = e0_algebra(e0, 3, TargetKind::ptdfinset);
  AlgebraTable B = e0_algebra(e0, 2, TargetKind::ptdfinset);
  FreeAlgebra FA = free_algebra(p, A, 2);
  FreeAlgebra FB = free_algebra(p, B, 2);

  AlgebraMap g;
  g.name = "collapse";
  g.component = {{0, 1, 1}};  // b |-> a
  REQUIRE(check_algebra_map(A, B, g).ok());
  InducedMap ind = induced_map(FA, FB, g, A, B);
  INFO(ind.report.summary());
  CHECK(ind.report.ok());

  // the identity induces the identity
  AlgebraMap id;
  id.name = "id";
  id.component = {{0, 1, 2}};
  InducedMap ii = induced_map(FA, FA, id, A, A);
  CHECK(ii.report.ok());
  for (int c = 0; c < FA.alg.num_classes; ++c)
    CHECK(ii.cls[static_cast<size_t>(c)] == c);
}

TEST_CASE("maps out of a free algebra restrict bijectively to generators") {
  auto com = share(builder_com(3));
  std::vector<std::vector<int>> mx = {{0, 1, 2}, {1, 1, 2}, {2, 2, 2}};
  AlgebraTable M = monoid_algebra(com, mx, 0, TargetKind::finset, "chain3");
  OperadMorphism idc = identity_morphism(com);
  FreeAlgebra F = free_algebra(idc, M, 2);
  AdjunctionReport R = adjunction_check(idc, M, M, F);
  CHECK(R.conclusive);
  CHECK(R.restricted_count == 6);  // monotone unit-preserving self-maps of the chain
  CHECK(R.algebra_count == 6);
  CHECK(R.match);
}

TEST_CASE("adjunction counts for free algebras over pointed monoids") {
  auto e0 = share(builder_e0(3));
  auto assoc = share(builder_assoc(3));
  OperadMorphism p = canonical_map(e0, assoc);
  AlgebraTable A = e0_algebra(e0, 2, TargetKind::ptdfinset);
  FreeAlgebra F = free_algebra(p, A, 2);
  AlgebraTable B = monoid_algebra(assoc, {{0, 1}, {1, 1}}, 0, TargetKind::ptdfinset, "idem2");
  AdjunctionReport R = adjunction_check(p, A, B, F);
  CHECK(R.conclusive);
  CHECK(R.restricted_count == 2);  // the generator goes anywhere, the basepoint is pinned
  CHECK(R.algebra_count == 2);
  CHECK(R.match);
}

TEST_CASE("adjunction comparison is inconclusive below level two") {
  FreeAlgebra F = james(1, 1);
  auto e0 = share(builder_e0(2));
  auto assoc = share(builder_assoc(2));
  AlgebraTable A = e0_algebra(e0, 2, TargetKind::ptdfinset);
  AlgebraTable B = monoid_algebra(assoc, {{0, 1}, {1, 1}}, 0, TargetKind::ptdfinset, "idem2");
  AdjunctionReport R = adjunction_check(canonical_map(e0, assoc), A, B, F);
  CHECK_FALSE(R.conclusive);
  CHECK(R.required_L == 2);
  CHECK_FALSE(R.note.empty());
}

TEST_CASE("adjunction with an empty target compares zero against zero") {
  auto triv = share(builder_triv(3));
  OperadMorphism id = identity_morphism(triv);
  AlgebraTable A = triv_algebra(triv, 2, TargetKind::finset);
  AlgebraTable B = triv_algebra(triv, 0, TargetKind::finset);
  FreeAlgebra F = free_algebra(id, A, 2);
  CHECK(F.alg.stabilized);
  AdjunctionReport R = adjunction_check(id, A, B, F);
  CHECK(R.conclusive);
  CHECK(R.restricted_count == 0);
  CHECK(R.algebra_count == 0);
  CHECK(R.match);
}

TEST_CASE("algebra maps out of the colimit match natural families") {
  auto e0 = share(builder_e0(3));
  auto assoc = share(builder_assoc(3));
  OperadMorphism p = canonical_map(e0, assoc);
  AlgebraTable A = e0_algebra(e0, 2, TargetKind::ptdfinset);
  FreeAlgebra F = free_algebra(p, A, 2);

  AlgebraTable B = monoid_algebra(assoc, {{0, 1}, {1, 1}}, 0, TargetKind::ptdfinset, "idem2");
  UniversalReport R = colim_universal_check(F, A, B);
  CHECK(R.conclusive);
  CHECK(R.map_count == 2);
  CHECK(R.transformation_count == 2);
  CHECK(R.match);

  AlgebraTable one = monoid_algebra(assoc, {{0}}, 0, TargetKind::ptdfinset, "one");
  UniversalReport R1 = colim_universal_check(F, A, one);
  CHECK(R1.match);
  CHECK(R1.map_count == 1);

  UniversalReport Rb = colim_universal_check(F, A, B, 1);
  CHECK_FALSE(Rb.conclusive);
  CHECK_FALSE(Rb.note.empty());
}

TEST_CASE("pointed targets are refused over shapes without a certificate") {
  auto triv = share(builder_triv(3));
  auto com = share(builder_com(3));
  OperadMorphism p = canonical_map(triv, com);
  AlgebraTable A = triv_algebra(triv, 2, TargetKind::ptdfinset);
  try {
    free_algebra(p, A, 2);
    FAIL("expected a refusal");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::law);
    CHECK(std::string(e.what()).find("certificate") != std::string::npos);
  }
  // the same shape is fine for plain finite sets
  AlgebraTable Af = triv_algebra(triv, 2, TargetKind::finset);
  CHECK(free_algebra(p, Af, 2).alg.num_classes == 6);  // unit + X + sym(X^2), nothing glued
}

TEST_CASE("unlawful input algebras are rejected before any colimit is built") {
  auto com = share(builder_com(3));
  AlgebraTable M = monoid_algebra(com, {{0, 1}, {1, 1}}, 0, TargetKind::finset, "idem2");
  M.action[find_op(*com, "mu1")] = {1, 0};  // break the unit law
  CHECK_THROWS_AS(free_algebra(identity_morphism(com), M, 2), Error);
}
