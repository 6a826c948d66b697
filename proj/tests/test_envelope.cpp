#include <catch2/catch.hpp>

#include <algorithm>
#include <memory>

#include <envlab/envelope.hpp>
#include <envlab/refcats.hpp>

using namespace envlab;

namespace {

OperadPtr share(OperadSpec O) { return std::make_shared<const OperadSpec>(std::move(O)); }

// Unpruned reference enumeration of hom(x,y): every slot assignment, every
// tuple of fiber operations, every unary, filtered by the full validity
// predicate. Deliberately independent of Envelope::hom's search order.
std::vector<EnvMorphism> hom_bruteforce(const Envelope& E, int xi, int yi) {
  const EnvObject& x = E.obj(xi);
  const EnvObject& y = E.obj(yi);
  int n = x.grade(), m = y.grade();
  std::vector<EnvMorphism> out;
  std::vector<int> alpha(static_cast<size_t>(n), 0);
  while (true) {
    std::vector<std::vector<int>> cells(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j)
      for (int q = 0; q < E.P().num_ops(); ++q) {
        EnvMorphism probe;
        std::vector<int> prof;
        for (size_t i = 0; i < alpha.size(); ++i)
          if (alpha[i] == j) prof.push_back(x.colors[i]);
        if (E.P().profile(q) == prof && E.P().out(q) == y.colors[static_cast<size_t>(j)])
          cells[static_cast<size_t>(j)].push_back(q);
      }
    bool any_empty = false;
    for (const auto& c : cells) any_empty = any_empty || c.empty();
    if (!any_empty) {
      std::vector<int> pick(static_cast<size_t>(m), 0);
      while (true) {
        for (int u = 0; u < E.O().num_ops(); ++u) {
          if (E.O().arity(u) != 1) continue;
          EnvMorphism f;
          f.src = xi;
          f.dst = yi;
          f.alpha = alpha;
          for (int j = 0; j < m; ++j)
            f.psi.push_back(cells[static_cast<size_t>(j)][static_cast<size_t>(pick[static_cast<size_t>(j)])]);
          f.u = u;
          if (E.structurally_valid(f) && E.compatible(f)) out.push_back(f);
        }
        int j = m - 1;
        while (j >= 0 &&
               pick[static_cast<size_t>(j)] + 1 >= static_cast<int>(cells[static_cast<size_t>(j)].size()))
          pick[static_cast<size_t>(j--)] = 0;
        if (j < 0) break;
        ++pick[static_cast<size_t>(j)];
      }
    }
    if (n == 0) break;
    int i = n - 1;
    while (i >= 0 && alpha[static_cast<size_t>(i)] + 1 >= m) alpha[static_cast<size_t>(i--)] = 0;
    if (i < 0) break;
    ++alpha[static_cast<size_t>(i)];
  }
  std::sort(out.begin(), out.end());
  return out;
}

Envelope env_e0_com(int L) {
  return build_envelope(canonical_map(share(builder_e0(L)), share(builder_com(L))), L);
}

Envelope env_assoc_com(int L) {
  return build_envelope(terminal_map(share(builder_assoc(L)), share(builder_com(L))), L);
}

Envelope env_e0_assoc(int L) {
  return build_envelope(canonical_map(share(builder_e0(L)), share(builder_assoc(L))), L);
}

}  // namespace

TEST_CASE("pruned morphism enumeration agrees with the unpruned reference") {
  auto E = env_e0_assoc(3);
  for (int x = 0; x < E.num_objects(); ++x)
    for (int y = 0; y < E.num_objects(); ++y) {
      auto fast = E.hom(x, y);
      std::sort(fast.begin(), fast.end());
      auto slow = hom_bruteforce(E, x, y);
      REQUIRE(fast == slow);
    }
  auto F = env_assoc_com(2);
  for (int x = 0; x < F.num_objects(); ++x)
    for (int y = 0; y < F.num_objects(); ++y) {
      auto fast = F.hom(x, y);
      std::sort(fast.begin(), fast.end());
      REQUIRE(fast == hom_bruteforce(F, x, y));
    }
}

TEST_CASE("envelope truncations are genuine categories") {
  for (int L = 0; L <= 3; ++L) {
    auto R = envelope_category(env_e0_com(3), L);
    auto rep = check_category_laws(R.cat);
    INFO(R.cat.name << ": " << rep.summary());
    REQUIRE(rep.ok());
  }
  auto R = envelope_category(env_e0_assoc(3), 3);
  REQUIRE(check_category_laws(R.cat).ok());
  auto S = envelope_category(env_assoc_com(3), 3);
  REQUIRE(check_category_laws(S.cat).ok());
}

TEST_CASE("free-point envelopes over the commutative operad are finite injections") {
  auto E = env_e0_com(3);
  CHECK(E.num_objects() == 4);  // one object per grade
  int x2 = -1, x3 = -1;
  for (int i = 0; i < E.num_objects(); ++i) {
    if (E.grade(i) == 2) x2 = i;
    if (E.grade(i) == 3) x3 = i;
  }
  CHECK(E.hom(x2, x3).size() == 6);
  CHECK(E.hom(x3, x2).empty());
  auto cat = envelope_category(E, 3);
  auto rep = check_envelope_iso(cat.cat, fin_inj(3).cat);
  INFO(rep.obstruction);
  CHECK(rep.iso);
}

TEST_CASE("free-point envelopes over the associative operad are ordered injections") {
  auto E = env_e0_assoc(3);
  // one object per word: 1 + 1 + 2 + 6
  CHECK(E.num_objects() == 10);
  auto cat = envelope_category(E, 3);
  auto rep = check_envelope_iso(cat.cat, delta_plus_inj(3).cat);
  INFO(rep.obstruction);
  CHECK(rep.iso);
}

TEST_CASE("associative-to-commutative envelopes are functions with ordered fibers") {
  auto E = env_assoc_com(3);
  CHECK(E.num_objects() == 4);
  int x2 = -1, x1 = -1;
  for (int i = 0; i < E.num_objects(); ++i) {
    if (E.grade(i) == 2) x2 = i;
    if (E.grade(i) == 1) x1 = i;
  }
  CHECK(E.hom(x2, x1).size() == 2);
  auto cat = envelope_category(E, 3);
  auto rep = check_envelope_iso(cat.cat, fiber_order_category(3).cat);
  INFO(rep.obstruction);
  CHECK(rep.iso);
}

TEST_CASE("pairing with the one-point operad rigidifies the envelope to bijections") {
  auto P = product_operad(builder_com(3), builder_triv(3));
  auto com = share(builder_com(3));
  auto p = terminal_map(std::shared_ptr<const OperadSpec>(P.op), com);
  auto E = build_envelope(p, 3);
  auto cat = envelope_category(E, 3);
  auto rep = check_envelope_iso(cat.cat, fin_iso(3).cat);
  INFO(rep.obstruction);
  CHECK(rep.iso);
}

TEST_CASE("a free bijection envelope is not the injection category") {
  auto E = env_e0_com(3);
  auto cat = envelope_category(E, 3);
  auto rep = check_envelope_iso(cat.cat, fin_iso(3).cat);
  CHECK_FALSE(rep.iso);
  CHECK_FALSE(rep.obstruction.empty());
}

TEST_CASE("cocartesian envelopes over a span are three-letter words") {
  auto K = span_category();
  auto OK = share(builder_cocartesian(K, 4));
  auto com = share(builder_com(4));
  auto E = build_envelope(terminal_map(OK, com), 4);
  CHECK(E.num_objects() == 121);  // all words of length <= 4 in three letters
  auto cat = envelope_category(E, 3);
  auto rep = check_envelope_iso(cat.cat, word_category(3).cat);
  INFO(rep.obstruction);
  CHECK(rep.iso);

  // spot check one grade-4 hom set: b slots fix b, c fixes c, each a roams
  auto find = [&](const std::vector<int>& colors) {
    for (int i = 0; i < E.num_objects(); ++i)
      if (E.obj(i).colors == colors) return i;
    return -1;
  };
  int baac = find({1, 0, 0, 2});
  int bac = find({1, 0, 2});
  REQUIRE(baac >= 0);
  REQUIRE(bac >= 0);
  CHECK(E.hom(baac, bac).size() == 9);
}

TEST_CASE("pairing with the one-point operad leaves only relabelings") {
  // the envelope of Assoc x Triv over Assoc is the symmetric action groupoid
  auto P = product_operad(builder_assoc(3), builder_triv(3));
  OperadMorphism pr;
  pr.name = "pr1";
  pr.source = P.op;
  pr.target = P.left;
  for (int c = 0; c < P.op->num_colors(); ++c)
    pr.color_map.push_back(P.color_pair[static_cast<size_t>(c)].first);
  for (int o = 0; o < P.op->num_ops(); ++o)
    pr.op_map.push_back(P.op_pair[static_cast<size_t>(o)].first);
  REQUIRE(check_operad_morphism(pr).ok());
  auto E = build_envelope(pr, 3);
  auto cat = envelope_category(E, 3);
  REQUIRE(check_category_laws(cat.cat).ok());
  // every morphism is invertible and the action is free: the skeleton is discrete
  auto sk = skeletonize(cat.cat);
  CHECK(sk.sub.cat.num_objects() == 4);
  CHECK(sk.sub.cat.num_mors() == 4);
}

TEST_CASE("fiber sorting is stable") {
  CHECK(fiber_sort_perm({1, 0, 1}) == Perm{1, 0, 2});
  CHECK(fiber_sort_perm({0, 0, 0}) == Perm{0, 1, 2});
  CHECK(fiber_sort_perm({2, 1, 0}) == Perm{2, 1, 0});
}

TEST_CASE("relabeling morphisms compose like permutations") {
  auto E = env_e0_assoc(3);
  int x = -1;
  for (int i = 0; i < E.num_objects(); ++i)
    if (E.grade(i) == 3) x = i;  // any length-3 word
  Perm s = {1, 2, 0}, t = {1, 0, 2};
  auto fs = E.perm_morphism(x, s);
  auto ft = E.perm_morphism(fs.dst, t);
  auto both = E.compose(ft, fs);
  auto direct = E.perm_morphism(x, compose_perm(t, s));
  CHECK(both == direct);
  CHECK(E.valid(fs));
  CHECK(E.valid(both));
}

TEST_CASE("tensoring objects concatenates colors and composes decorations") {
  auto E = env_e0_assoc(3);
  int x1 = -1;
  for (int i = 0; i < E.num_objects(); ++i)
    if (E.grade(i) == 1) x1 = i;
  int w01 = -1;
  for (int i = 0; i < E.O().num_ops(); ++i)
    if (E.O().op_name(i) == "w01") w01 = i;
  REQUIRE(w01 >= 0);
  auto t = E.tensor_obj(w01, {x1, x1});
  CHECK(t.grade() == 2);
  CHECK(E.O().op_name(t.op) == "w01");
  CHECK(E.id_of(t) >= 0);
}

TEST_CASE("the universal algebra in the envelope satisfies the algebra laws") {
  auto reps = {
      check_unit_algebra(env_e0_com(3)),
      check_unit_algebra(env_e0_assoc(3)),
      check_unit_algebra(env_assoc_com(3)),
  };
  for (const auto& rep : reps) {
    INFO(rep.subject << ": " << rep.summary());
    CHECK(rep.ok());
    CHECK(rep.checked > 0);
  }
}

TEST_CASE("generating morphisms present the same colimit as the full morphism set") {
  auto e0 = share(builder_e0(4));
  auto com = share(builder_com(4));
  auto assoc = share(builder_assoc(4));
  auto A2 = e0_algebra(e0, 2, TargetKind::finset);
  auto A3 = e0_algebra(e0, 3, TargetKind::finset);
  for (auto target : {com, assoc}) {
    auto E = build_envelope(canonical_map(e0, target), 3);
    for (const auto& A : {A2, A3}) {
      auto full = colimit_set(extend_algebra(E, A, 3, false).d);
      auto gens = colimit_set(extend_algebra(E, A, 3, true).d);
      REQUIRE(full.num_classes == gens.num_classes);
      REQUIRE(full.class_rep == gens.class_rep);
      REQUIRE(full.legs == gens.legs);
    }
  }
}

TEST_CASE("generators stay inside the requested grade window") {
  auto E = env_e0_com(3);
  for (const auto& g : E.generators(2)) {
    CHECK(E.grade(g.src) <= 2);
    CHECK(E.grade(g.dst) <= 2);
    CHECK(E.valid(g));
  }
}

TEST_CASE("an envelope with a unique empty object is weakly contractible") {
  auto cat = envelope_category(env_e0_com(2), 2);
  CHECK(weak_contractibility(cat.cat).certified());
  auto cat2 = envelope_category(env_e0_assoc(2), 2);
  CHECK(weak_contractibility(cat2.cat).certified());
}

TEST_CASE("extending an algebra over the envelope respects cardinalities") {
  auto e0 = share(builder_e0(3));
  auto com = share(builder_com(3));
  auto E = build_envelope(canonical_map(e0, com), 3);
  auto A = e0_algebra(e0, 2, TargetKind::finset);
  auto D = extend_algebra(E, A, 3);
  REQUIRE(D.d.sizes.size() == 4);
  CHECK(D.d.sizes[0] == 1);  // empty product
  CHECK(D.d.sizes[1] == 2);
  CHECK(D.d.sizes[2] == 4);
  CHECK(D.d.sizes[3] == 8);
}
