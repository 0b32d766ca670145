#include "tgs/semiring.hpp"

#include <map>
#include <sstream>

namespace tgs {

std::string to_string(const AxiomConfig& config) {
  std::ostringstream out;
  out << "commutativity=";
  switch (config.commutativity) {
    case Commutativity::Swap12: out << "swap12"; break;
    case Commutativity::FullSymmetric: out << "full-symmetric"; break;
    case Commutativity::Off: out << "off"; break;
  }
  out << " zero_absorption="
      << (config.zero_absorption == ZeroAbsorption::Middle ? "middle"
                                                           : "all-slots");
  out << " add_commutative=" << (config.require_add_commutative ? "on" : "off");
  out << " add_associative=" << (config.require_add_associative ? "on" : "off");
  return out.str();
}

bool apply_axiom_token(AxiomConfig& config, const std::string& token) {
  auto eq = token.find('=');
  if (eq == std::string::npos) return false;
  std::string key = token.substr(0, eq);
  std::string value = token.substr(eq + 1);
  auto on_off = [&](bool& flag) {
    if (value == "on") flag = true;
    else if (value == "off") flag = false;
    else return false;
    return true;
  };
  if (key == "commutativity") {
    if (value == "swap12") config.commutativity = Commutativity::Swap12;
    else if (value == "full-symmetric") config.commutativity = Commutativity::FullSymmetric;
    else if (value == "off") config.commutativity = Commutativity::Off;
    else return false;
    return true;
  }
  if (key == "zero_absorption") {
    if (value == "middle") config.zero_absorption = ZeroAbsorption::Middle;
    else if (value == "all-slots") config.zero_absorption = ZeroAbsorption::AllSlots;
    else return false;
    return true;
  }
  if (key == "add_commutative") return on_off(config.require_add_commutative);
  if (key == "add_associative") return on_off(config.require_add_associative);
  return false;
}

GammaSemiring::GammaSemiring(std::size_t order, std::size_t gamma,
                             std::vector<Elem> add, std::vector<Elem> ternary,
                             AxiomConfig config)
    : order_(order),
      gamma_(gamma),
      add_(std::move(add)),
      ternary_(std::move(ternary)),
      config_(config) {
  if (order_ == 0 || gamma_ == 0)
    throw Error(ErrorKind::MalformedFile, "order and gamma must be positive");
  if (add_.size() != order_ * order_)
    throw Error(ErrorKind::MalformedFile,
                "add table has " + std::to_string(add_.size()) +
                    " entries, expected " + std::to_string(order_ * order_));
  std::size_t cells = order_ * gamma_ * order_ * gamma_ * order_;
  if (ternary_.size() != cells)
    throw Error(ErrorKind::MalformedFile,
                "ternary table has " + std::to_string(ternary_.size()) +
                    " entries, expected " + std::to_string(cells));
  for (std::size_t i = 0; i < add_.size(); ++i)
    if (add_[i] >= order_)
      throw Error(ErrorKind::IndexOutOfRange,
                  "add entry " + std::to_string(i) + " = " +
                      std::to_string(add_[i]) + " >= order " +
                      std::to_string(order_));
  for (std::size_t i = 0; i < ternary_.size(); ++i)
    if (ternary_[i] >= order_)
      throw Error(ErrorKind::IndexOutOfRange,
                  "ternary entry " + std::to_string(i) + " = " +
                      std::to_string(ternary_[i]) + " >= order " +
                      std::to_string(order_));
  for (Elem a = 0; a < order_; ++a)
    if (add_[a] != a || add_[a * order_] != a)
      throw Error(ErrorKind::MissingZeroIdentity,
                  "0 + " + std::to_string(a) + " or " + std::to_string(a) +
                      " + 0 differs from " + std::to_string(a));
}

std::optional<Elem> GammaSemiring::multiplicative_identity() const {
  for (Elem e = 0; e < order_; ++e) {
    bool ok = true;
    for (Elem al = 0; al < gamma_ && ok; ++al)
      for (Elem be = 0; be < gamma_ && ok; ++be)
        for (Elem a = 0; a < order_ && ok; ++a)
          ok = mul(e, al, e, be, a) == a;
    if (ok) return e;
  }
  return std::nullopt;
}

bool GammaSemiring::additive_group() const {
  for (Elem a = 0; a < order_; ++a) {
    bool found = false;
    for (Elem b = 0; b < order_ && !found; ++b) found = add(a, b) == 0;
    if (!found) return false;
  }
  return true;
}

GammaSemiring GammaSemiring::with_axioms(AxiomConfig config) const {
  GammaSemiring copy = *this;
  copy.config_ = config;
  return copy;
}

GammaSemiring trivial_semiring(std::size_t gamma) {
  return GammaSemiring(1, gamma, {0}, std::vector<Elem>(gamma * gamma, 0));
}

GammaSemiring cyclic_semiring(std::size_t n, bool multiplicative,
                              AxiomConfig config) {
  std::vector<Elem> add(n * n);
  std::vector<Elem> ternary(n * n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) add[a * n + b] = (a + b) % n;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        ternary[(a * n + b) * n + c] =
            multiplicative ? (a * b * c) % n : (a + b + c) % n;
  return GammaSemiring(n, 1, std::move(add), std::move(ternary), config);
}

namespace {

class ReportBuilder {
 public:
  explicit ReportBuilder(std::size_t cap) : cap_(cap) {}

  void check(bool holds, const char* axiom,
             std::initializer_list<Elem> witness) {
    ++report_.check_count;
    if (holds) return;
    ++report_.failure_count;
    report_.valid = false;
    auto& stored = stored_[axiom];
    if (stored < cap_) {
      ++stored;
      report_.violations.push_back({axiom, std::vector<Elem>(witness)});
    }
  }

  AxiomReport finish() { return std::move(report_); }

 private:
  std::size_t cap_;
  AxiomReport report_;
  std::map<std::string, std::size_t> stored_;
};

}  // namespace

AxiomReport verify_axioms(const GammaSemiring& s,
                          std::size_t max_witnesses_per_axiom) {
  const Elem n = static_cast<Elem>(s.order());
  const Elem g = static_cast<Elem>(s.gamma());
  const AxiomConfig& cfg = s.axioms();
  ReportBuilder rb(max_witnesses_per_axiom);

  if (cfg.require_add_associative)
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          rb.check(s.add(s.add(a, b), c) == s.add(a, s.add(b, c)),
                   "add-associativity", {a, b, c});
  if (cfg.require_add_commutative)
    for (Elem a = 0; a < n; ++a)
      for (Elem b = a + 1; b < n; ++b)
        rb.check(s.add(a, b) == s.add(b, a), "add-commutativity", {a, b});

  // Distributivity over + in each carrier slot.
  for (Elem al = 0; al < g; ++al)
    for (Elem be = 0; be < g; ++be)
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          for (Elem p = 0; p < n; ++p)
            for (Elem q = 0; q < n; ++q) {
              Elem xy = s.add(x, y);
              rb.check(s.mul(xy, al, p, be, q) ==
                           s.add(s.mul(x, al, p, be, q), s.mul(y, al, p, be, q)),
                       "distributivity-left", {x, y, al, p, be, q});
              rb.check(s.mul(p, al, xy, be, q) ==
                           s.add(s.mul(p, al, x, be, q), s.mul(p, al, y, be, q)),
                       "distributivity-middle", {p, al, x, y, be, q});
              rb.check(s.mul(p, al, q, be, xy) ==
                           s.add(s.mul(p, al, q, be, x), s.mul(p, al, q, be, y)),
                       "distributivity-right", {p, al, q, be, x, y});
            }

  // (a al b be c) ga d de e = a al (b be c ga d) de e = a al b be (c ga d de e)
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (Elem b = 0; b < n; ++b)
        for (Elem be = 0; be < g; ++be)
          for (Elem c = 0; c < n; ++c) {
            Elem abc = s.mul(a, al, b, be, c);
            for (Elem ga = 0; ga < g; ++ga)
              for (Elem d = 0; d < n; ++d) {
                Elem bcd = s.mul(b, be, c, ga, d);
                for (Elem de = 0; de < g; ++de)
                  for (Elem e = 0; e < n; ++e) {
                    Elem left = s.mul(abc, ga, d, de, e);
                    Elem middle = s.mul(a, al, bcd, de, e);
                    Elem right = s.mul(a, al, b, be, s.mul(c, ga, d, de, e));
                    rb.check(left == middle, "associativity",
                             {a, al, b, be, c, ga, d, de, e});
                    rb.check(middle == right, "associativity",
                             {a, al, b, be, c, ga, d, de, e});
                  }
              }
          }

  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (Elem be = 0; be < g; ++be)
        for (Elem c = 0; c < n; ++c) {
          rb.check(s.mul(a, al, 0, be, c) == 0, "zero-absorption",
                   {a, al, 0, be, c});
          if (cfg.zero_absorption == ZeroAbsorption::AllSlots) {
            rb.check(s.mul(0, al, a, be, c) == 0, "zero-absorption",
                     {0, al, a, be, c});
            rb.check(s.mul(a, al, c, be, 0) == 0, "zero-absorption",
                     {a, al, c, be, 0});
          }
        }

  if (cfg.commutativity != Commutativity::Off)
    for (Elem a = 0; a < n; ++a)
      for (Elem al = 0; al < g; ++al)
        for (Elem b = 0; b < n; ++b)
          for (Elem be = 0; be < g; ++be)
            for (Elem c = 0; c < n; ++c) {
              Elem v = s.mul(a, al, b, be, c);
              rb.check(v == s.mul(b, al, a, be, c), "commutativity",
                       {a, al, b, be, c});
              if (cfg.commutativity == Commutativity::FullSymmetric)
                rb.check(v == s.mul(a, al, c, be, b), "commutativity",
                         {a, al, b, be, c});
            }

  return rb.finish();
}

bool is_morphism(const GammaSemiring& from, const GammaSemiring& to,
                 std::span<const Elem> f) {
  if (from.gamma() != to.gamma() || f.size() != from.order()) return false;
  const Elem n = static_cast<Elem>(from.order());
  const Elem g = static_cast<Elem>(from.gamma());
  if (f[0] != 0) return false;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (f[from.add(a, b)] != to.add(f[a], f[b])) return false;
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (Elem b = 0; b < n; ++b)
        for (Elem be = 0; be < g; ++be)
          for (Elem c = 0; c < n; ++c)
            if (f[from.mul(a, al, b, be, c)] != to.mul(f[a], al, f[b], be, f[c]))
              return false;
  return true;
}

std::vector<std::vector<Elem>> all_morphisms(const GammaSemiring& from,
                                             const GammaSemiring& to) {
  std::vector<std::vector<Elem>> result;
  if (from.gamma() != to.gamma()) return result;
  enforce_guard(checked_pow(to.order(), from.order() - 1), std::size_t{1} << 20,
                "morphism search");
  const std::size_t n = from.order();
  std::vector<Elem> f(n, 0);
  // Odometer over f(1..n-1); f(0) = 0 is forced.
  while (true) {
    if (is_morphism(from, to, f)) result.push_back(f);
    std::size_t i = 1;
    while (i < n && ++f[i] == to.order()) f[i++] = 0;
    if (i >= n) break;
  }
  return result;
}

}  // namespace tgs
