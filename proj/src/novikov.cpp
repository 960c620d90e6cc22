#include "ainf/novikov.hpp"

#include "ainf/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ainf {

std::string Beta::str() const {
  std::ostringstream os;
  os << "(" << format_scalar(lambda) << ", " << mu << ")";
  return os.str();
}

NovikovScalar NovikovScalar::constant(const Scalar& a, const Scalar& cap) {
  NovikovScalar x;
  x.cap = cap;
  x.add_term(a, 0, 0);
  return x;
}

NovikovScalar NovikovScalar::monomial(const Scalar& a, const Scalar& lambda,
                                      int n, const Scalar& cap) {
  NovikovScalar x;
  x.cap = cap;
  x.add_term(a, lambda, n);
  return x;
}

void NovikovScalar::add_term(const Scalar& a, const Scalar& lambda, int n) {
  if (lambda < 0)
    fail(ErrorKind::Precondition, "NovikovScalar: negative energy exponent");
  if (lambda > cap || ainf::is_zero(a)) return;
  auto key = std::make_pair(lambda, n);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, a);
    return;
  }
  it->second += a;
  if (ainf::is_zero(it->second)) terms.erase(it);
}

Scalar NovikovScalar::coeff(const Scalar& lambda, int n) const {
  auto it = terms.find(std::make_pair(lambda, n));
  return it == terms.end() ? Scalar(0) : it->second;
}

NovikovScalar NovikovScalar::operator+(const NovikovScalar& o) const {
  NovikovScalar out;
  out.cap = std::min(cap, o.cap);
  for (const auto& [k, a] : terms) out.add_term(a, k.first, k.second);
  for (const auto& [k, a] : o.terms) out.add_term(a, k.first, k.second);
  return out;
}

NovikovScalar NovikovScalar::operator-() const { return scaled(-1); }

NovikovScalar NovikovScalar::operator-(const NovikovScalar& o) const {
  return *this + (-o);
}

NovikovScalar NovikovScalar::operator*(const NovikovScalar& o) const {
  NovikovScalar out;
  out.cap = std::min(cap, o.cap);
  for (const auto& [k1, a1] : terms)
    for (const auto& [k2, a2] : o.terms)
      out.add_term(a1 * a2, k1.first + k2.first, k1.second + k2.second);
  return out;
}

NovikovScalar NovikovScalar::scaled(const Scalar& c) const {
  NovikovScalar out;
  out.cap = cap;
  for (const auto& [k, a] : terms) out.add_term(a * c, k.first, k.second);
  return out;
}

std::string NovikovScalar::render() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, a] : terms) {
    if (!first) os << " + ";
    first = false;
    os << format_scalar(a) << " T^" << format_scalar(k.first) << " e^"
       << k.second;
  }
  return os.str();
}

namespace {

// Generators that can be summed without breaking termination or the gap
// conditions: positive energy (zero-energy nonzero-mu ones are condition
// violations, reported separately; (0,0) adds nothing).
std::vector<Beta> usable_generators(const GappedMonoid& G) {
  std::vector<Beta> out;
  for (const Beta& b : G.generators)
    if (b.lambda > 0) out.push_back(b);
  return out;
}

} // namespace

std::vector<Beta> monoid_closure(const GappedMonoid& G, const Scalar& cap) {
  std::vector<Beta> gens = usable_generators(G);
  std::set<Beta> seen;
  std::vector<Beta> queue{Beta{0, 0}};
  seen.insert(Beta{0, 0});
  while (!queue.empty()) {
    Beta x = queue.back();
    queue.pop_back();
    for (const Beta& g : gens) {
      Beta y = x + g;
      if (y.lambda > cap) continue;
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return std::vector<Beta>(seen.begin(), seen.end());
}

RelationReport check_gapped(const GappedMonoid& G, const Scalar& cap) {
  RelationReport rep;
  for (const Beta& b : G.generators) {
    ++rep.checked;
    if (b.lambda < 0)
      rep.failures.push_back(
          {"generator", {b.str()}, "negative energy"});
    else if (b.lambda == 0 && b.mu != 0)
      rep.failures.push_back(
          {"generator", {b.str()}, "zero energy with nonzero mu"});
    if (b.mu % 2 != 0)
      rep.failures.push_back({"generator", {b.str()}, "odd mu"});
  }
  std::vector<Beta> closure = monoid_closure(G, cap);
  std::map<Scalar, long long> fibers;
  for (const Beta& b : closure) ++fibers[b.lambda];
  rep.notes.push_back("closure size below cap " + format_scalar(cap) + ": " +
                      std::to_string(closure.size()));
  for (const auto& [lambda, n] : fibers)
    rep.notes.push_back("fiber at energy " + format_scalar(lambda) + ": " +
                        std::to_string(n));
  rep.checked += static_cast<long long>(closure.size());
  return rep;
}

} // namespace ainf
