#include "folddcs/mpoly.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace folddcs {

MPoly::MPoly(const PrimeField& field, std::size_t arity, std::uint32_t partial_bound,
             std::uint32_t total_bound)
    : field_(field), arity_(arity), d_(partial_bound), D_(total_bound) {
  if (arity == 0) throw std::invalid_argument("arity must be positive");
  const std::uint64_t cap = static_cast<std::uint64_t>(arity) * partial_bound;
  if (D_ > cap) D_ = static_cast<std::uint32_t>(cap);
}

MPoly MPoly::constant(const PrimeField& field, std::size_t arity, std::uint32_t partial_bound,
                      std::uint32_t total_bound, const FieldElement& c) {
  MPoly p(field, arity, partial_bound, total_bound);
  p.add_term(ExponentVector(arity, 0), c);
  return p;
}

bool MPoly::within_bounds(const ExponentVector& e) const {
  if (e.size() != arity_) return false;
  std::uint64_t total = 0;
  for (auto x : e) {
    if (x > d_) return false;
    total += x;
  }
  return total <= D_;
}

void MPoly::add_term(const ExponentVector& e, const FieldElement& c) {
  if (e.size() != arity_) throw std::invalid_argument("exponent vector arity mismatch");
  if (!field_.contains(c)) throw FieldMismatch();
  if (!within_bounds(e)) {
    std::ostringstream os;
    os << "monomial (";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ") outside bounds d=" << d_ << " D=" << D_;
    throw DegreeBoundViolation(os.str());
  }
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FieldElement MPoly::coefficient(const ExponentVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? field_.zero() : it->second;
}

std::uint32_t MPoly::max_partial_degree() const {
  std::uint32_t m = 0;
  for (const auto& [e, c] : terms_) {
    for (auto x : e) m = std::max(m, x);
  }
  return m;
}

std::uint32_t MPoly::total_degree() const {
  std::uint32_t m = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t t = 0;
    for (auto x : e) t += x;
    m = std::max(m, t);
  }
  return m;
}

MPoly MPoly::scaled(const FieldElement& c) const {
  MPoly out(field_, arity_, d_, D_);
  if (c.is_zero()) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, v * c);
  return out;
}

MPoly MPoly::plus(const MPoly& o) const {
  if (o.arity_ != arity_) throw std::invalid_argument("arity mismatch");
  if (o.field_ != field_) throw FieldMismatch();
  MPoly out(field_, arity_, std::max(d_, o.d_), std::max(D_, o.D_));
  out.terms_ = terms_;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

MPoly MPoly::minus(const MPoly& o) const { return plus(o.scaled(-o.field_.one())); }

std::string MPoly::to_text() const {
  std::ostringstream os;
  os << "mu=" << arity_ << " d=" << d_ << " D=" << D_ << " p=" << field_.modulus() << "\n";
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << " : " << c.value() << "\n";
  }
  return os.str();
}

MPoly MPoly::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw std::invalid_argument("missing polynomial header");
  std::uint64_t mu = 0, d = 0, D = 0, p = 0;
  {
    std::istringstream hs(header);
    std::string tok;
    int seen = 0;
    while (hs >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("bad header token " + tok);
      auto key = tok.substr(0, eq);
      auto val = std::stoull(tok.substr(eq + 1));
      if (key == "mu") mu = val, seen |= 1;
      else if (key == "d") d = val, seen |= 2;
      else if (key == "D") D = val, seen |= 4;
      else if (key == "p") p = val, seen |= 8;
      else throw std::invalid_argument("unknown header key " + key);
    }
    if (seen != 15) throw std::invalid_argument("incomplete polynomial header");
  }
  PrimeField field(p);
  MPoly f(field, mu, static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(D));
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("term line missing ':'");
    ExponentVector e;
    std::istringstream es(line.substr(0, colon));
    std::string part;
    while (std::getline(es, part, ',')) e.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    std::string coeff = line.substr(colon + 1);
    coeff.erase(0, coeff.find_first_not_of(' '));
    coeff.erase(coeff.find_last_not_of(" \r") + 1);
    f.add_term(e, field.parse(coeff));
  }
  return f;
}

Domain::Domain(PrimeField field, std::vector<FieldElement> points, DomainKind kind,
               FieldElement generator, FieldElement shift)
    : field_(field),
      points_(std::move(points)),
      kind_(kind),
      generator_(generator),
      shift_(shift) {}

Domain Domain::from_points(const PrimeField& field, std::vector<FieldElement> points) {
  if (points.size() < 2) throw std::invalid_argument("|H| must be at least 2");
  std::set<std::uint64_t> seen;
  for (const auto& x : points) {
    if (!field.contains(x)) throw FieldMismatch();
    if (!seen.insert(x.value()).second) {
      throw std::invalid_argument("duplicate point " + x.to_string() + " in H");
    }
  }
  return Domain(field, std::move(points), DomainKind::kUnstructured, field.zero(), field.one());
}

Domain Domain::subgroup(const PrimeField& field, const FieldElement& generator,
                        std::size_t order) {
  return coset(field, generator, order, field.one());
}

Domain Domain::coset(const PrimeField& field, const FieldElement& generator, std::size_t order,
                     const FieldElement& shift) {
  if (order < 2) throw std::invalid_argument("|H| must be at least 2");
  if (!field.contains(generator) || !field.contains(shift)) throw FieldMismatch();
  if (shift.is_zero()) throw std::invalid_argument("coset shift must be nonzero");
  std::vector<FieldElement> pts;
  pts.reserve(order);
  FieldElement g = field.one();
  for (std::size_t i = 0; i < order; ++i) {
    if (i > 0 && g == field.one()) {
      throw std::invalid_argument("generator order is smaller than " + std::to_string(order));
    }
    pts.push_back(shift * g);
    g *= generator;
  }
  if (g != field.one()) {
    throw std::invalid_argument("generator order is not " + std::to_string(order));
  }
  const auto kind = shift == field.one() ? DomainKind::kMultiplicativeSubgroup
                                         : DomainKind::kMultiplicativeCoset;
  return Domain(field, std::move(pts), kind, generator, shift);
}

bool Domain::contains(const FieldElement& x) const {
  return std::find(points_.begin(), points_.end(), x) != points_.end();
}

FieldElement find_subgroup_generator(const PrimeField& field, std::size_t n) {
  const std::uint64_t p = field.modulus();
  if (n == 0 || (p - 1) % n != 0) {
    throw std::invalid_argument("no subgroup of order " + std::to_string(n) + " in F_" +
                                std::to_string(p));
  }
  for (std::uint64_t x = 2; x < p; ++x) {
    FieldElement g = field.elem(x).pow((p - 1) / n);
    FieldElement acc = g;
    std::size_t ord = 1;
    while (acc != field.one()) {
      acc *= g;
      ++ord;
    }
    if (ord == n) return g;
  }
  if (n == 1) return field.one();
  throw std::invalid_argument("no generator found");
}

namespace {

// table[i][k] = point[i]^k for k <= max exponent of variable i in f.
std::vector<std::vector<FieldElement>> power_tables(const MPoly& f,
                                                    std::span<const FieldElement> point,
                                                    OpCounter* ops) {
  std::vector<std::uint32_t> maxe(point.size(), 0);
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t i = 0; i < point.size(); ++i) maxe[i] = std::max(maxe[i], e[i]);
  }
  std::vector<std::vector<FieldElement>> table(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!f.field().contains(point[i])) throw FieldMismatch();
    table[i].reserve(maxe[i] + 1);
    table[i].push_back(f.field().one());
    if (maxe[i] >= 1) table[i].push_back(point[i]);
    for (std::uint32_t k = 2; k <= maxe[i]; ++k) {
      table[i].push_back(counted_mul(table[i].back(), point[i], ops));
    }
  }
  return table;
}

void accumulate(MPoly::TermMap& acc, ExponentVector&& key, const FieldElement& v,
                OpCounter* ops) {
  auto [it, inserted] = acc.try_emplace(std::move(key), v);
  if (!inserted) it->second = counted_add(it->second, v, ops);
}

}  // namespace

FieldElement eval(const MPoly& f, std::span<const FieldElement> point, OpCounter* ops) {
  if (point.size() != f.arity()) throw std::invalid_argument("evaluation point arity mismatch");
  auto table = power_tables(f, point, ops);
  FieldElement acc = f.field().zero();
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    FieldElement t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) t = counted_mul(t, table[i][e[i]], ops);
    }
    acc = first ? t : counted_add(acc, t, ops);
    first = false;
  }
  return acc;
}

std::vector<FieldElement> power_sums(const Domain& H, std::uint32_t d, OpCounter* ops) {
  const PrimeField& F = H.field();
  std::vector<FieldElement> sigma(d + 1, F.zero());
  sigma[0] = F.elem(H.size());
  for (const auto& a : H.points()) {
    FieldElement pw = F.one();
    for (std::uint32_t j = 1; j <= d; ++j) {
      pw = counted_mul(pw, a, ops);
      sigma[j] = counted_add(sigma[j], pw, ops);
    }
  }
  return sigma;
}

FieldElement sum_over_cube(const MPoly& f, std::span<const FieldElement> sigma, OpCounter* ops) {
  FieldElement acc = f.field().zero();
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    FieldElement t = c;
    for (auto x : e) {
      if (x >= sigma.size()) throw std::invalid_argument("power sums too short");
      t = counted_mul(t, sigma[x], ops);
    }
    acc = first ? t : counted_add(acc, t, ops);
    first = false;
  }
  return acc;
}

FieldElement sum_over_cube(const MPoly& f, const Domain& H, OpCounter* ops) {
  auto sigma = power_sums(H, f.partial_bound(), ops);
  return sum_over_cube(f, sigma, ops);
}

FieldElement sum_over_cube_bruteforce(const MPoly& f, const Domain& H) {
  double size = 1;
  for (std::size_t i = 0; i < f.arity(); ++i) size *= static_cast<double>(H.size());
  if (size > static_cast<double>(1 << 24)) {
    throw std::invalid_argument("brute-force sum exceeds the 2^24 point guard");
  }
  const std::size_t mu = f.arity();
  std::vector<std::size_t> idx(mu, 0);
  std::vector<FieldElement> pt(mu, H.points()[0]);
  FieldElement acc = f.field().zero();
  for (;;) {
    acc += eval(f, pt);
    std::size_t i = 0;
    while (i < mu) {
      if (++idx[i] < H.size()) {
        pt[i] = H.points()[idx[i]];
        break;
      }
      idx[i] = 0;
      pt[i] = H.points()[0];
      ++i;
    }
    if (i == mu) break;
  }
  return acc;
}

MPoly partial_sum_suffix(const MPoly& f, std::span<const FieldElement> sigma, std::size_t k,
                         OpCounter* ops) {
  if (k < 1 || k >= f.arity()) throw std::invalid_argument("suffix length out of range");
  const std::size_t keep = f.arity() - k;
  MPoly g(f.field(), keep, f.partial_bound(), f.total_bound());
  MPoly::TermMap acc;
  for (const auto& [e, c] : f.terms()) {
    FieldElement t = c;
    for (std::size_t i = keep; i < e.size(); ++i) {
      if (e[i] >= sigma.size()) throw std::invalid_argument("power sums too short");
      t = counted_mul(t, sigma[e[i]], ops);
    }
    accumulate(acc, ExponentVector(e.begin(), e.begin() + keep), t, ops);
  }
  for (auto& [e, c] : acc) g.add_term(e, c);
  return g;
}

MPoly partial_sum_suffix(const MPoly& f, const Domain& H, std::size_t k, OpCounter* ops) {
  auto sigma = power_sums(H, f.partial_bound(), ops);
  return partial_sum_suffix(f, sigma, k, ops);
}

MPoly partial_eval_prefix(const MPoly& f, std::span<const FieldElement> alpha, OpCounter* ops) {
  const std::size_t j = alpha.size();
  if (j >= f.arity()) throw std::invalid_argument("prefix must be shorter than the arity");
  MPoly g(f.field(), f.arity() - j, f.partial_bound(), f.total_bound());
  if (j == 0) {
    for (const auto& [e, c] : f.terms()) g.add_term(e, c);
    return g;
  }
  // Tables are built against the prefix only.
  std::vector<std::vector<FieldElement>> table(j);
  {
    std::vector<std::uint32_t> maxe(j, 0);
    for (const auto& [e, c] : f.terms()) {
      for (std::size_t i = 0; i < j; ++i) maxe[i] = std::max(maxe[i], e[i]);
    }
    for (std::size_t i = 0; i < j; ++i) {
      if (!f.field().contains(alpha[i])) throw FieldMismatch();
      table[i].push_back(f.field().one());
      if (maxe[i] >= 1) table[i].push_back(alpha[i]);
      for (std::uint32_t k = 2; k <= maxe[i]; ++k) {
        table[i].push_back(counted_mul(table[i].back(), alpha[i], ops));
      }
    }
  }
  MPoly::TermMap acc;
  for (const auto& [e, c] : f.terms()) {
    FieldElement t = c;
    for (std::size_t i = 0; i < j; ++i) {
      if (e[i]) t = counted_mul(t, table[i][e[i]], ops);
    }
    if (t.is_zero()) continue;
    accumulate(acc, ExponentVector(e.begin() + j, e.end()), t, ops);
  }
  for (auto& [e, c] : acc) g.add_term(e, c);
  return g;
}

MPoly fold(const FieldElement& z, const MPoly& f0, const MPoly& f1, OpCounter* ops) {
  if (f0.arity() != f1.arity()) throw std::invalid_argument("fold arity mismatch");
  if (f0.field() != f1.field() || !f0.field().contains(z)) throw FieldMismatch();
  MPoly out(f0.field(), f0.arity(), std::max(f0.partial_bound(), f1.partial_bound()),
            std::max(f0.total_bound(), f1.total_bound()));
  MPoly::TermMap acc;
  if (!z.is_zero()) {
    for (const auto& [e, c] : f0.terms()) acc.emplace_hint(acc.end(), e, counted_mul(z, c, ops));
  }
  for (const auto& [e, c] : f1.terms()) accumulate(acc, ExponentVector(e), c, ops);
  for (auto& [e, c] : acc) out.add_term(e, c);
  return out;
}

std::uint64_t count_admissible(std::size_t mu, std::uint32_t d, std::uint32_t D) {
  // ways[t] = number of prefixes with total t; saturates at uint64 max.
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> ways(D + 1, 0);
  ways[0] = 1;
  for (std::size_t i = 0; i < mu; ++i) {
    std::vector<std::uint64_t> next(D + 1, 0);
    for (std::uint32_t t = 0; t <= D; ++t) {
      if (!ways[t]) continue;
      for (std::uint32_t e = 0; e <= d && t + e <= D; ++e) {
        next[t + e] = (next[t + e] > kMax - ways[t]) ? kMax : next[t + e] + ways[t];
      }
    }
    ways.swap(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total = (total > kMax - w) ? kMax : total + w;
  return total;
}

namespace {

FieldElement nonzero_sample(const PrimeField& field, SeededPrng& rng) {
  for (;;) {
    auto c = field.sample(rng);
    if (!c.is_zero()) return c;
  }
}

std::uint64_t below(SeededPrng& rng, std::uint64_t n) {
  // n is tiny here (degree bounds, arities); modulo bias is irrelevant for
  // instance generation.
  return rng.next_u64() % n;
}

ExponentVector random_exponent(std::size_t mu, std::uint32_t d, std::uint32_t D,
                               SeededPrng& rng) {
  ExponentVector e(mu);
  std::uint64_t total = 0;
  for (auto& x : e) {
    x = static_cast<std::uint32_t>(below(rng, d + 1));
    total += x;
  }
  while (total > D) {
    auto i = below(rng, mu);
    if (e[i] > 0) {
      --e[i];
      --total;
    }
  }
  return e;
}

template <typename Fn>
void admissible_rec(ExponentVector& e, std::size_t i, std::uint32_t d, std::uint32_t budget,
                    Fn& fn) {
  if (i == e.size()) {
    fn(static_cast<const ExponentVector&>(e));
    return;
  }
  const std::uint32_t top = std::min(d, budget);
  for (std::uint32_t x = 0; x <= top; ++x) {
    e[i] = x;
    admissible_rec(e, i + 1, d, budget - x, fn);
  }
  e[i] = 0;
}

// Lexicographic order, last variable fastest.
template <typename Fn>
void for_each_admissible(std::size_t mu, std::uint32_t d, std::uint32_t D, Fn&& fn) {
  ExponentVector e(mu, 0);
  admissible_rec(e, 0, d, D, fn);
}

}  // namespace

MPoly random_poly(const PrimeField& field, std::size_t mu, std::uint32_t d, std::uint32_t D,
                  double density, SeededPrng& rng) {
  if (mu == 0) throw std::invalid_argument("arity must be positive");
  if (static_cast<std::uint64_t>(D) > static_cast<std::uint64_t>(mu) * d) {
    throw std::invalid_argument("total degree bound exceeds mu*d");
  }
  if (density < 0 || density > 1) throw std::invalid_argument("density must lie in [0,1]");
  MPoly f(field, mu, d, D);
  if (density == 0) return f;
  const std::uint64_t support = count_admissible(mu, d, D);
  if (support <= (1u << 16)) {
    const std::uint64_t threshold =
        density >= 1 ? std::numeric_limits<std::uint64_t>::max()
                     : static_cast<std::uint64_t>(density * 18446744073709551616.0);
    for_each_admissible(mu, d, D, [&](const ExponentVector& e) {
      if (density >= 1 || rng.next_u64() < threshold) f.add_term(e, nonzero_sample(field, rng));
    });
    return f;
  }
  const double expected = density * static_cast<double>(support);
  const auto n = static_cast<std::size_t>(std::min(expected, double{1 << 16}) + 0.5);
  return random_poly_terms(field, mu, d, D, std::max<std::size_t>(n, 1), rng);
}

MPoly random_poly_terms(const PrimeField& field, std::size_t mu, std::uint32_t d,
                        std::uint32_t D, std::size_t n_terms, SeededPrng& rng) {
  if (static_cast<std::uint64_t>(D) > static_cast<std::uint64_t>(mu) * d) {
    throw std::invalid_argument("total degree bound exceeds mu*d");
  }
  MPoly f(field, mu, d, D);
  const std::uint64_t support = count_admissible(mu, d, D);
  const std::size_t target = static_cast<std::size_t>(std::min<std::uint64_t>(n_terms, support));
  std::size_t attempts = 0;
  while (f.num_terms() < target) {
    auto e = random_exponent(mu, d, D, rng);
    if (f.terms().count(e)) {
      if (++attempts > 64 * (target + 1)) break;
      continue;
    }
    f.add_term(e, nonzero_sample(field, rng));
  }
  return f;
}

std::uint32_t univariate_degree(const MPoly& f) {
  if (f.arity() != 1) throw std::invalid_argument("expected a univariate polynomial");
  return f.total_degree();
}

std::vector<FieldElement> univariate_coefficients(const MPoly& f) {
  if (f.arity() != 1) throw std::invalid_argument("expected a univariate polynomial");
  std::vector<FieldElement> c(f.is_zero() ? 1 : univariate_degree(f) + 1, f.field().zero());
  for (const auto& [e, v] : f.terms()) c[e[0]] = v;
  return c;
}

MPoly univariate_from_coefficients(const PrimeField& field, std::span<const FieldElement> coeffs,
                                   std::uint32_t degree_bound) {
  MPoly f(field, 1, degree_bound, degree_bound);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) f.add_term({static_cast<std::uint32_t>(k)}, coeffs[k]);
  }
  return f;
}

}  // namespace folddcs
