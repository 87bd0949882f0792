#include "coxsaito/poly.hpp"

#include "coxsaito/kernels.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace coxsaito {

RingPtr make_ring(std::vector<std::string> names) {
  if (names.size() > static_cast<std::size_t>(kMaxVars))
    throw std::invalid_argument("too many variables (max " + std::to_string(kMaxVars) + ")");
  return std::make_shared<const Ring>(Ring{std::move(names)});
}

RingPtr indexed_ring(const std::string& stem, int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return make_ring(std::move(names));
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->names == b->names;
}

Monomial Monomial::from(const std::vector<int>& exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) throw std::invalid_argument("too many variables");
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) m.set(static_cast<int>(i), exps[i]);
  return m;
}

Monomial Monomial::unit(int i, int power) {
  Monomial m;
  m.set(i, power);
  return m;
}

void Monomial::set(int i, int v) {
  if (v < 0 || v > 60000) throw std::out_of_range("exponent out of range");
  deg = static_cast<std::uint16_t>(deg - e[i] + v);
  e[i] = static_cast<std::uint16_t>(v);
}

int Monomial::wdeg(const std::vector<int>& w) const {
  int s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * e[i];
  return s;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
  r.deg = static_cast<std::uint16_t>(a.deg + b.deg);
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
  r.deg = static_cast<std::uint16_t>(a.deg - b.deg);
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    d += r.e[i];
  }
  r.deg = static_cast<std::uint16_t>(d);
  return r;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int i = 0; i < kMaxVars; ++i) {
    h ^= m.e[i];
    h *= 1099511628211ULL;
  }
  return h;
}

int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  return 0;
}

int wgrevlex_cmp(const Monomial& a, const Monomial& b, const std::vector<int>& w) {
  int da = a.wdeg(w), db = b.wdeg(w);
  if (da != db) return da > db ? 1 : -1;
  return grevlex_cmp(a, b);
}

namespace {

void enumerate_wdeg(int n, int i, int left, const std::vector<int>& w, Monomial& cur,
                    std::vector<Monomial>& out) {
  if (i == n - 1) {
    if (left % w[i] == 0) {
      cur.set(i, left / w[i]);
      out.push_back(cur);
      cur.set(i, 0);
    }
    return;
  }
  for (int k = 0; k * w[i] <= left; ++k) {
    cur.set(i, k);
    enumerate_wdeg(n, i + 1, left - k * w[i], w, cur, out);
  }
  cur.set(i, 0);
}

bool term_greater(const Term& x, const Term& y) { return grevlex_cmp(x.m, y.m) > 0; }

}  // namespace

std::vector<Monomial> monomials_of_wdeg(int n, int d, const std::vector<int>& w) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur;
  enumerate_wdeg(n, 0, d, w, cur, out);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) > 0; });
  return out;
}

Poly Poly::constant(RingPtr ring, const Scalar& c) {
  Poly p(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back({Monomial{}, c});
  return p;
}

Poly Poly::var(RingPtr ring, int i) {
  if (i < 0 || i >= ring->nvars()) throw std::out_of_range("variable index out of range");
  return monomial(std::move(ring), Monomial::unit(i), Scalar(1));
}

Poly Poly::monomial(RingPtr ring, const Monomial& m, const Scalar& c) {
  Poly p(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Poly p(std::move(ring));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c += t.c;
    } else {
      if (!p.terms_.empty() && p.terms_.back().c.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().c.is_zero()) p.terms_.pop_back();
  return p;
}

Poly Poly::from_sorted(RingPtr ring, std::vector<Term> terms) {
  Poly p(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

void Poly::check_ring(const Poly& o) const {
  if (!same_ring(ring_, o.ring_)) throw ContextMismatch();
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.deg == 0); }

Scalar Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().m.deg == 0) return terms_.back().c;
  return Scalar();
}

Scalar Poly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& x) { return grevlex_cmp(t.m, x) > 0; });
  if (it != terms_.end() && it->m == m) return it->c;
  return Scalar();
}

int Poly::radicand() const {
  int d = 0;
  for (const auto& t : terms_) d = common_radicand(d, t.c.d());
  return d;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return terms_.front().m.deg;
}

int Poly::wdegree(const std::vector<int>& w) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.m.wdeg(w));
  return d;
}

bool Poly::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.m.deg != terms_.front().m.deg) return false;
  return true;
}

bool Poly::is_homogeneous(const std::vector<int>& w) const {
  if (terms_.empty()) return true;
  int d = terms_.front().m.wdeg(w);
  for (const auto& t : terms_)
    if (t.m.wdeg(w) != d) return false;
  return true;
}

Poly Poly::homogeneous_part(int d, const std::vector<int>& w) const {
  Poly r(ring_);
  for (const auto& t : terms_)
    if (t.m.wdeg(w) == d) r.terms_.push_back(t);
  return r;
}

Poly Poly::operator-() const {
  Poly r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m, -t.c});
  return r;
}

void Poly::add_scaled(const Poly& b, const Scalar& c, const Monomial& m) {
  if (!ring_) ring_ = b.ring_;
  check_ring(b);
  if (c.is_zero() || b.terms_.empty()) return;
  if (&b == this) {
    Poly copy = b;
    add_scaled(copy, c, m);
    return;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size()) {
      out.push_back(std::move(terms_[i++]));
      continue;
    }
    Monomial bm = b.terms_[j].m * m;
    int cmp = i == terms_.size() ? -1 : grevlex_cmp(terms_[i].m, bm);
    if (cmp > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (cmp < 0) {
      out.push_back({bm, b.terms_[j++].c * c});
    } else {
      Term t = std::move(terms_[i++]);
      t.c.add_product(b.terms_[j++].c, c);
      if (!t.c.is_zero()) out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
}

Poly& Poly::operator+=(const Poly& o) {
  add_scaled(o, Scalar(1), Monomial{});
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  add_scaled(o, Scalar(-1), Monomial{});
  return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.c *= c;
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly Poly::mul_monomial(const Monomial& m, const Scalar& c) const {
  Poly r(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
  return r;
}

Poly mul_serial(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.ring() ? a.ring() : b.ring());
  if (a.size() == 1) return b.mul_monomial(a.leading().m, a.leading().c);
  if (b.size() == 1) return a.mul_monomial(b.leading().m, b.leading().c);
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(a.size() * 2 + b.size() * 2);
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) acc[x.m * y.m].add_product(x.c, y.c);
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) terms.push_back({m, std::move(c)});
  std::sort(terms.begin(), terms.end(), term_greater);
  return Poly::from_sorted(a.ring(), std::move(terms));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.ring() && b.ring() && !same_ring(a.ring(), b.ring())) throw ContextMismatch();
  if (a.size() * b.size() >= kernels::kParallelMulThreshold) return kernels::mul_parallel(a, b);
  return mul_serial(a, b);
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (!a.terms_.empty() && !same_ring(a.ring_, b.ring_)) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].m == b.terms_[i].m) || !(a.terms_[i].c == b.terms_[i].c)) return false;
  return true;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  Poly result = constant(ring_, Scalar(1));
  Poly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Poly Poly::differentiate(int i) const {
  if (i < 0 || i >= nvars()) throw std::out_of_range("derivative index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    int e = t.m[i];
    if (e == 0) continue;
    Monomial m = t.m;
    m.set(i, e - 1);
    out.push_back({m, t.c * Scalar(e)});
  }
  // lowering one exponent keeps grevlex order among the survivors
  return from_terms(ring_, std::move(out));
}

namespace {

// Horner-style substitution over the variables in order: f = sum_k x_i^k f_k.
Poly substitute_rec(const std::vector<const Term*>& terms, int i, int n,
                    std::vector<std::vector<Poly>>& powers, const std::vector<Poly>& images,
                    const RingPtr& target) {
  if (i == n) {
    Scalar s;
    for (const Term* t : terms) s += t->c;
    return Poly::constant(target, s);
  }
  int maxe = 0;
  for (const Term* t : terms) maxe = std::max(maxe, static_cast<int>(t->m[i]));
  std::vector<std::vector<const Term*>> groups(maxe + 1);
  for (const Term* t : terms) groups[t->m[i]].push_back(t);
  auto& pw = powers[i];
  while (static_cast<int>(pw.size()) <= maxe) pw.push_back(pw.back() * images[i]);
  Poly result(target);
  for (int k = 0; k <= maxe; ++k) {
    if (groups[k].empty()) continue;
    Poly inner = substitute_rec(groups[k], i + 1, n, powers, images, target);
    if (k == 0)
      result += inner;
    else
      result += inner * pw[k];
  }
  return result;
}

}  // namespace

Poly Poly::substitute(const std::vector<Poly>& images) const {
  if (static_cast<int>(images.size()) != nvars())
    throw std::invalid_argument("substitute: expected " + std::to_string(nvars()) + " images, got " +
                                std::to_string(images.size()));
  RingPtr target;
  for (const auto& img : images) {
    if (!target) target = img.ring();
    else if (img.ring() && !same_ring(target, img.ring())) throw ContextMismatch();
  }
  if (!target) target = ring_;
  std::vector<std::vector<Poly>> powers(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) powers[i].push_back(Poly::constant(target, Scalar(1)));
  std::vector<const Term*> all;
  all.reserve(terms_.size());
  for (const auto& t : terms_) all.push_back(&t);
  if (all.empty()) return Poly(target);
  return substitute_rec(all, 0, nvars(), powers, images, target);
}

Scalar Poly::evaluate(const std::vector<Scalar>& point) const {
  if (static_cast<int>(point.size()) != nvars())
    throw std::invalid_argument("evaluate: point has wrong length");
  std::vector<std::vector<Scalar>> pw(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) pw[i].push_back(Scalar(1));
  Scalar s;
  for (const auto& t : terms_) {
    Scalar v = t.c;
    for (int i = 0; i < nvars(); ++i) {
      int e = t.m[i];
      if (e == 0) continue;
      while (static_cast<int>(pw[i].size()) <= e) pw[i].push_back(pw[i].back() * point[i]);
      v *= pw[i][e];
    }
    s += v;
  }
  return s;
}

std::optional<Poly> Poly::divide_exact(const Poly& g) const {
  if (g.is_zero()) throw DivisionByZero();
  check_ring(g);
  Poly r = *this;
  std::vector<Term> q;
  const Term& lg = g.leading();
  Scalar inv = lg.c.inverse();
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    if (!lg.m.divides(lr.m)) return std::nullopt;
    Monomial m = lr.m / lg.m;
    Scalar c = lr.c * inv;
    r.add_scaled(g, -c, m);
    q.push_back({m, std::move(c)});
  }
  return from_sorted(ring_, std::move(q));
}

Poly Poly::rebase(RingPtr ring, int offset) const {
  if (offset + nvars() > ring->nvars()) throw std::invalid_argument("rebase: target ring too small");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (int i = 0; i < nvars(); ++i) m.set(i + offset, t.m[i]);
    out.push_back({m, t.c});
  }
  return from_terms(std::move(ring), std::move(out));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().c.inverse();
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = t.c.to_string();
    bool neg = t.c.is_rational() && sgn(t.c.a()) < 0;
    if (!t.c.is_rational()) c = "(" + c + ")";
    if (neg) c = c.substr(1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    bool unit = t.c.is_rational() && abs(t.c.a()) == 1;
    bool any = false;
    if (!unit || t.m.deg == 0) {
      os << c;
      any = true;
    }
    for (int i = 0; i < nvars(); ++i) {
      if (t.m[i] == 0) continue;
      if (any) os << "*";
      os << ring_->names[i];
      if (t.m[i] > 1) os << "^" << t.m[i];
      any = true;
    }
  }
  return os.str();
}

}  // namespace coxsaito
