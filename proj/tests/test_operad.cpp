#include <catch2/catch.hpp>

#include <memory>

#include <envlab/operad.hpp>
#include <envlab/refcats.hpp>

using namespace envlab;

namespace {
int find_op(const OperadSpec& O, const std::string& nm) {
  for (int i = 0; i < O.num_ops(); ++i)
    if (O.op_name(i) == nm) return i;
  return -1;
}
OperadPtr share(OperadSpec O) { return std::make_shared<const OperadSpec>(std::move(O)); }
}  // namespace

TEST_CASE("builders satisfy the operad laws exhaustively") {
  for (const auto& O : {builder_com(4), builder_e0(4), builder_triv(4), builder_assoc(4)}) {
    auto rep = check_operad_laws(O);
    INFO(O.name << ": " << rep.summary());
    CHECK(rep.ok());
  }
}

TEST_CASE("cocartesian operads satisfy the operad laws") {
  auto O = builder_cocartesian(span_category(), 3);
  auto rep = check_operad_laws(O);
  INFO(rep.summary());
  CHECK(rep.ok());
  // parallel arrows multiply the operation count, so cap lower here
  CHECK(check_operad_laws(builder_cocartesian(reflexive_pair(), 2)).ok());
}

TEST_CASE("product operads satisfy the operad laws") {
  auto A = product_operad(builder_com(3), builder_triv(3));
  CHECK(check_operad_laws(*A.op).ok());
  auto B = product_operad(builder_assoc(3), builder_com(3));
  CHECK(check_operad_laws(*B.op).ok());
}

TEST_CASE("operation counts per arity") {
  auto com = builder_com(5);
  auto assoc = builder_assoc(4);
  auto count = [](const OperadSpec& O, int n) {
    int c = 0;
    for (int i = 0; i < O.num_ops(); ++i)
      if (O.arity(i) == n) ++c;
    return c;
  };
  for (int n = 0; n <= 5; ++n) CHECK(count(com, n) == 1);
  CHECK(count(assoc, 0) == 1);  // the empty word: algebras are monoids
  CHECK(count(assoc, 1) == 1);
  CHECK(count(assoc, 2) == 2);
  CHECK(count(assoc, 3) == 6);
  CHECK(count(assoc, 4) == 24);
  CHECK(builder_e0(3).num_ops() == 2);  // the empty product and the identity
  CHECK(builder_triv(3).num_ops() == 1);
}

TEST_CASE("associative words compose by splicing") {
  auto A = builder_assoc(4);
  int w01 = find_op(A, "w01");
  int w10 = find_op(A, "w10");
  int e = A.unit(0);
  REQUIRE(w01 >= 0);
  REQUIRE(w10 >= 0);
  // (a0 a1) with a0 := (b0 b1) gives (b0 b1 b2)
  CHECK(A.gamma(w01, {w01, e}) == find_op(A, "w012"));
  // (a0 a1) with a1 := (b1 b2) also gives (b0 b1 b2): associativity collapses
  CHECK(A.gamma(w01, {e, w01}) == find_op(A, "w012"));
  // reversing the outer order reverses the blocks
  CHECK(A.gamma(w10, {w01, e}) == find_op(A, "w201"));
}

TEST_CASE("the symmetric action pulls arguments back") {
  auto A = builder_assoc(3);
  int w01 = find_op(A, "w01");
  // act(w, swap)(a0, a1) = w(a1, a0) = a1 a0
  CHECK(A.act(w01, {1, 0}) == find_op(A, "w10"));
  // identity permutation acts trivially
  CHECK(A.act(w01, {0, 1}) == w01);
}

TEST_CASE("block permutation witnesses outer equivariance") {
  auto A = builder_assoc(4);
  int w01 = find_op(A, "w01");
  int e = A.unit(0);
  Perm swap = {1, 0};
  // children of the unpermuted composite: arities 1 and 2
  Perm beta = detail::equivariance_block_perm(swap, {1, 2});
  REQUIRE(beta == Perm{2, 0, 1});
  int lhs = A.gamma(A.act(w01, swap), {w01, e});
  int rhs = A.act(A.gamma(w01, {e, w01}), beta);
  CHECK(lhs == rhs);
  CHECK(lhs == find_op(A, "w201"));
}

TEST_CASE("corrupting the symmetric action is caught") {
  OperadSpec bad = builder_assoc(3);
  int w01 = find_op(bad, "w01");
  int w10 = find_op(bad, "w10");
  bad.act_[{w01, {1, 0}}] = w01;  // pretend the swap fixes a noncommutative word
  bad.act_[{w10, {1, 0}}] = w10;
  CHECK_FALSE(check_operad_laws(bad).ok());
}

TEST_CASE("corrupting a composition entry is caught") {
  OperadSpec bad = builder_assoc(3);
  int w01 = find_op(bad, "w01");
  int e = bad.unit(0);
  bad.gamma_table_[{w01, {w01, e}}] = find_op(bad, "w201");
  CHECK_FALSE(check_operad_laws(bad).ok());
}

TEST_CASE("arity caps are enforced") {
  auto A = builder_assoc(3);
  int w01 = find_op(A, "w01");
  int w012 = find_op(A, "w012");
  // total arity 4 > cap 3
  CHECK_THROWS_AS(A.gamma(w01, {w012, A.unit(0)}), Error);
  try {
    A.gamma(w01, {w012, A.unit(0)});
  } catch (const Error& err) {
    CHECK(err.kind == ErrorKind::cap);
  }
}

TEST_CASE("product pairs same-arity operations") {
  auto P = product_operad(builder_com(3), builder_triv(3));
  CHECK(P.op->num_ops() == 1);  // only the units pair up
  auto Q = product_operad(builder_assoc(3), builder_com(3));
  int n2 = 0;
  for (int i = 0; i < Q.op->num_ops(); ++i)
    if (Q.op->arity(i) == 2) ++n2;
  CHECK(n2 == 2);
  // composition works componentwise through the lazy rule
  int u = Q.op->unit(0);
  for (int i = 0; i < Q.op->num_ops(); ++i)
    if (Q.op->arity(i) == 2) CHECK(Q.op->gamma(i, {u, u}) == i);
}

TEST_CASE("content hashes depend on the presentation") {
  CHECK(builder_com(3).content_hash() == builder_com(3).content_hash());
  CHECK(builder_com(3).content_hash() != builder_com(4).content_hash());
  auto p = product_operad(builder_com(3), builder_triv(3));
  auto q = product_operad(builder_com(3), builder_triv(3));
  CHECK(p.op->content_hash() == q.op->content_hash());
}

TEST_CASE("the terminal morphism to the commutative operad is an operad map") {
  auto com = share(builder_com(4));
  for (auto O : {share(builder_assoc(4)), share(builder_e0(4)), share(builder_triv(4))}) {
    auto t = terminal_map(O, com);
    auto rep = check_operad_morphism(t);
    INFO(O->name << ": " << rep.summary());
    CHECK(rep.ok());
  }
}

TEST_CASE("identity morphisms pass the morphism laws") {
  CHECK(check_operad_morphism(identity_morphism(share(builder_assoc(3)))).ok());
}

TEST_CASE("projections from a product operad are operad maps") {
  auto P = product_operad(builder_assoc(3), builder_com(3));
  OperadMorphism pr;
  pr.name = "pr1";
  pr.source = P.op;
  pr.target = P.left;
  for (int c = 0; c < P.op->num_colors(); ++c)
    pr.color_map.push_back(P.color_pair[static_cast<size_t>(c)].first);
  for (int o = 0; o < P.op->num_ops(); ++o)
    pr.op_map.push_back(P.op_pair[static_cast<size_t>(o)].first);
  CHECK(check_operad_morphism(pr).ok());
}

TEST_CASE("a broken morphism is caught") {
  auto A = share(builder_assoc(3));
  auto com = share(builder_com(3));
  auto t = terminal_map(A, com);
  // redirect the binary words to the ternary commutative operation
  for (int o = 0; o < A->num_ops(); ++o)
    if (A->arity(o) == 2) t.op_map[static_cast<size_t>(o)] = 3;
  CHECK_FALSE(check_operad_morphism(t).ok());
}

TEST_CASE("canonical maps resolve by profile when unique") {
  auto e0 = share(builder_e0(3));
  auto com = share(builder_com(3));
  auto p = canonical_map(e0, com);
  CHECK(check_operad_morphism(p).ok());
  // nothing binary maps into the empty-products operad
  CHECK_THROWS_AS(canonical_map(com, e0), Error);
}

TEST_CASE("cocartesian operations are tuples of arrows") {
  auto O = builder_cocartesian(span_category(), 3);
  // profile (a,a) -> b: each slot picks the unique arrow f
  int found = 0;
  for (int i = 0; i < O.num_ops(); ++i)
    if (O.profile(i) == std::vector<int>{0, 0} && O.out(i) == 1) ++found;
  CHECK(found == 1);
  // profile (b) -> c: no arrow b -> c
  for (int i = 0; i < O.num_ops(); ++i)
    CHECK_FALSE((O.profile(i) == std::vector<int>{1} && O.out(i) == 2));
}
