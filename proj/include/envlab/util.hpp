#pragma once

// Shared small utilities: error taxonomy, permutations, hashing,
// law-check reports, and a mixed-radix indexer for product sets.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace envlab {

// ---------------------------------------------------------------------------
// Errors

enum class ErrorKind {
  parse,       // malformed input text/JSON
  resolve,     // unknown name, missing piece, ambiguous reference
  law,         // an axiom check failed where validity was required
  mismatch,    // two routes that must agree disagreed
  cap,         // arity/grade cap or precondition violated
  structural,  // malformed in-memory table (sizes, ranges)
  internal,    // bug guard
};

inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse: return 2;
    case ErrorKind::resolve: return 3;
    case ErrorKind::law: return 4;
    case ErrorKind::mismatch: return 5;
    case ErrorKind::cap: return 6;
    default: return 1;
  }
}

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

inline void require(bool cond, ErrorKind k, const std::string& msg) {
  if (!cond) fail(k, msg);
}

// ---------------------------------------------------------------------------
// Permutations of {0..n-1}, stored as images: p[i] = p(i).

using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_perm(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[static_cast<size_t>(v)]) return false;
    seen[static_cast<size_t>(v)] = 1;
  }
  return true;
}

// (f ∘ g)(i) = f(g(i))
inline Perm compose_perm(const Perm& f, const Perm& g) {
  Perm r(g.size());
  for (size_t i = 0; i < g.size(); ++i) r[i] = f[static_cast<size_t>(g[i])];
  return r;
}

inline Perm invert_perm(const Perm& p) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[static_cast<size_t>(p[i])] = static_cast<int>(i);
  return r;
}

// All permutations of {0..n-1} in lexicographic order of the image vector.
inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do { out.push_back(p); } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Block-diagonal sum: acts on the disjoint union of {0..sizes[i]-1} blocks.
inline Perm block_sum(const std::vector<Perm>& blocks) {
  Perm r;
  int off = 0;
  for (const auto& b : blocks) {
    for (int v : b) r.push_back(off + v);
    off += static_cast<int>(b.size());
  }
  return r;
}

// ---------------------------------------------------------------------------
// FNV-1a, used for content hashes of canonical serializations.

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Law-check report. Checks that validate axioms return one of these rather
// than throwing, so callers can aggregate and print every violation.

struct LawReport {
  std::string subject;
  long long checked = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }

  void note(const std::string& v) { violations.push_back(v); }

  std::string summary() const {
    std::ostringstream os;
    os << subject << ": " << checked << " instances checked, ";
    if (ok()) {
      os << "all laws hold";
    } else {
      os << violations.size() << " violation(s):";
      for (const auto& v : violations) os << "\n  - " << v;
    }
    return os.str();
  }

  void merge(const LawReport& other) {
    checked += other.checked;
    for (const auto& v : other.violations) violations.push_back(v);
  }
};

// ---------------------------------------------------------------------------
// Row-major indexer for a product of finite sets: the FIRST factor varies
// slowest. Tuples are vectors of per-factor indices.

struct ProductIndexer {
  std::vector<int> sizes;
  std::vector<long long> strides;
  long long total = 1;

  explicit ProductIndexer(std::vector<int> sz) : sizes(std::move(sz)) {
    strides.assign(sizes.size(), 1);
    for (int i = static_cast<int>(sizes.size()) - 2; i >= 0; --i)
      strides[static_cast<size_t>(i)] =
          strides[static_cast<size_t>(i + 1)] * sizes[static_cast<size_t>(i + 1)];
    for (int s : sizes) total *= s;
    if (total < 0) fail(ErrorKind::cap, "product set overflow");
  }

  long long flatten(const std::vector<int>& tuple) const {
    require(tuple.size() == sizes.size(), ErrorKind::structural, "tuple rank mismatch");
    long long idx = 0;
    for (size_t i = 0; i < tuple.size(); ++i) {
      require(tuple[i] >= 0 && tuple[i] < sizes[i], ErrorKind::structural, "tuple entry out of range");
      idx += strides[i] * tuple[i];
    }
    return idx;
  }

  std::vector<int> unflatten(long long idx) const {
    require(idx >= 0 && idx < total, ErrorKind::structural, "flat index out of range");
    std::vector<int> tuple(sizes.size());
    for (size_t i = 0; i < sizes.size(); ++i) {
      tuple[i] = static_cast<int>(idx / strides[i]);
      idx %= strides[i];
    }
    return tuple;
  }
};

// ---------------------------------------------------------------------------
// Misc small helpers.

template <typename T>
std::string join(const std::vector<T>& xs, const std::string& sep) {
  std::ostringstream os;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) os << sep;
    os << xs[i];
  }
  return os.str();
}

// Union-find over 0..n-1 with deterministic representatives: find() returns
// the root, but callers pick canonical class labels by minimum member.
struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    // Root at the smaller index so roots are stable under union order.
    if (a > b) std::swap(a, b);
    parent[static_cast<size_t>(b)] = a;
    return true;
  }
};

}  // namespace envlab
