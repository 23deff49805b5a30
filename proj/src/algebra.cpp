#include "taut/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace taut {

Rational make_rational(long num, long den) {
  if (den == 0) throw ValidationError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ValidationError("empty rational");
  if (s[0] == '+') s.erase(0, 1);
  auto slash = s.find('/');
  auto digits_ok = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && t[0] == '-') i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  Rational q;
  if (slash == std::string::npos) {
    if (!digits_ok(s, true)) throw ValidationError("malformed rational: " + text);
    q = Rational(Integer(s));
  } else {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
      throw ValidationError("malformed rational: " + text);
    Integer d(den);
    if (d == 0) throw ValidationError("zero denominator: " + text);
    q = Rational(Integer(num), d);
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational factorial(int k) {
  if (k < 0) throw ValidationError("factorial of negative number");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational power(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (sgn(base) == 0) throw ValidationError("zero to negative power");
    Rational inv = 1 / base;
    return power(inv, -exponent);
  }
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational q(n, d);
  q.canonicalize();
  return q;
}

namespace {

int variable_rank(const std::string& v, long& index) {
  if (v.size() >= 2 && v[0] == 'a' &&
      std::all_of(v.begin() + 1, v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    index = std::stol(v.substr(1));
    return 0;
  }
  index = 0;
  if (v == "r") return 1;
  if (v == "x") return 2;
  return 3;
}

bool valid_variable_name(const std::string& v) {
  if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0]))) return false;
  return std::all_of(v.begin(), v.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

bool variable_less(const std::string& lhs, const std::string& rhs) {
  long il, ir;
  int rl = variable_rank(lhs, il), rr = variable_rank(rhs, ir);
  if (rl != rr) return rl < rr;
  if (rl == 0) return il < ir;
  return lhs < rhs;
}

MultiPoly::MultiPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {
  for (const auto& v : vars_)
    if (!valid_variable_name(v)) throw ValidationError("invalid variable name: " + v);
  std::sort(vars_.begin(), vars_.end(), variable_less);
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

MultiPoly::MultiPoly(const Rational& c) {
  if (sgn(c) != 0) {
    Rational q = c;
    q.canonicalize();
    terms_[{}] = q;
  }
}

MultiPoly MultiPoly::variable(const std::string& name) {
  MultiPoly p(std::vector<std::string>{name});
  p.terms_[{1}] = 1;
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(Exponents(vars_.size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int x : e) d += x;
    best = std::max(best, d);
  }
  return best;
}

int MultiPoly::degree_in(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return terms_.empty() ? -1 : 0;
  std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, e[idx]);
  return best;
}

Rational MultiPoly::coefficient(const std::map<std::string, int>& monomial) const {
  Exponents e(vars_.size(), 0);
  for (const auto& [v, k] : monomial) {
    if (k == 0) continue;
    auto it = std::find(vars_.begin(), vars_.end(), v);
    if (it == vars_.end()) return 0;
    e[static_cast<std::size_t>(it - vars_.begin())] = k;
  }
  auto t = terms_.find(e);
  return t == terms_.end() ? Rational(0) : t->second;
}

void MultiPoly::add_term(const std::map<std::string, int>& monomial, const Rational& c) {
  std::vector<std::string> names;
  for (const auto& [v, k] : monomial) {
    if (k < 0) throw ValidationError("negative exponent");
    if (k > 0) names.push_back(v);
  }
  unify(MultiPoly(names).vars_);
  Exponents e(vars_.size(), 0);
  for (const auto& [v, k] : monomial) {
    if (k == 0) continue;
    auto it = std::find(vars_.begin(), vars_.end(), v);
    e[static_cast<std::size_t>(it - vars_.begin())] = k;
  }
  Rational& slot = terms_[e];
  slot += c;
  slot.canonicalize();
  if (sgn(slot) == 0) terms_.erase(e);
}

void MultiPoly::unify(const std::vector<std::string>& other_vars) {
  std::vector<std::string> merged;
  std::set_union(vars_.begin(), vars_.end(), other_vars.begin(), other_vars.end(),
                 std::back_inserter(merged), variable_less);
  if (merged == vars_) return;
  std::vector<std::size_t> pos(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i)
    pos[i] = static_cast<std::size_t>(std::find(merged.begin(), merged.end(), vars_[i]) - merged.begin());
  std::map<Exponents, Rational> moved;
  for (const auto& [e, c] : terms_) {
    Exponents ne(merged.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
    moved.emplace(std::move(ne), c);
  }
  vars_ = std::move(merged);
  terms_ = std::move(moved);
}

void MultiPoly::trim() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (sgn(it->second) == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  unify(other.vars_);
  MultiPoly o = other;
  o.unify(vars_);
  for (const auto& [e, c] : o.terms_) {
    Rational& slot = terms_[e];
    slot += c;
    if (sgn(slot) == 0) terms_.erase(e);
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) { return *this += -other; }

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) {
  unify(other.vars_);
  MultiPoly o = other;
  o.unify(vars_);
  std::map<Exponents, Rational> out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      out[e] += c1 * c2;
    }
  }
  terms_ = std::move(out);
  trim();
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly d = a - b;
  return d.is_zero();
}

MultiPoly MultiPoly::pow(int k) const {
  if (k < 0) throw ValidationError("negative power of polynomial");
  MultiPoly result(Rational(1)), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly>& bindings) const {
  for (const auto& [v, p] : bindings)
    if (std::find(vars_.begin(), vars_.end(), v) == vars_.end())
      throw ValidationError("unknown variable in substitution: " + v);
  MultiPoly result;
  for (const auto& [e, c] : terms_) {
    MultiPoly term(c);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = bindings.find(vars_[i]);
      MultiPoly factor;
      if (it != bindings.end()) {
        factor = it->second.pow(e[i]);
      } else {
        factor = variable(vars_[i]).pow(e[i]);
      }
      term *= factor;
    }
    result += term;
  }
  return result;
}

MultiPoly MultiPoly::substitute(const std::map<std::string, long>& bindings) const {
  std::map<std::string, MultiPoly> b;
  for (const auto& [v, k] : bindings) b.emplace(v, MultiPoly(Rational(k)));
  return substitute(b);
}

Rational MultiPoly::evaluate(const std::map<std::string, Rational>& point) const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(vars_[i]);
      if (it == point.end()) throw ValidationError("no value for variable " + vars_[i]);
      t *= power(it->second, e[i]);
    }
    total += t;
  }
  return total;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) out << " + ";
    first = false;
    out << it->second.get_str();
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (it->first[i] == 0) continue;
      out << '*' << vars_[i];
      if (it->first[i] > 1) out << '^' << it->first[i];
    }
  }
  return out.str();
}

MultiPoly MultiPoly::parse(const std::string& text) {
  std::string s = text;
  if (s == "0") return {};
  MultiPoly result;
  std::size_t start = 0;
  while (true) {
    std::size_t sep = s.find(" + ", start);
    std::string term = s.substr(start, sep == std::string::npos ? std::string::npos : sep - start);
    std::vector<std::string> factors;
    std::size_t p = 0;
    while (true) {
      std::size_t star = term.find('*', p);
      factors.push_back(term.substr(p, star == std::string::npos ? std::string::npos : star - p));
      if (star == std::string::npos) break;
      p = star + 1;
    }
    Rational c = parse_rational(factors.at(0));
    std::map<std::string, int> mono;
    for (std::size_t i = 1; i < factors.size(); ++i) {
      const std::string& f = factors[i];
      std::size_t caret = f.find('^');
      std::string name = f.substr(0, caret);
      if (!valid_variable_name(name)) throw ValidationError("malformed polynomial: " + text);
      int e = 1;
      if (caret != std::string::npos) {
        std::string es = f.substr(caret + 1);
        if (es.empty() || !std::all_of(es.begin(), es.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
          throw ValidationError("malformed exponent: " + text);
        e = std::stoi(es);
      }
      mono[name] += e;
    }
    result.add_term(mono, c);
    if (sep == std::string::npos) break;
    start = sep + 3;
  }
  return result;
}

std::string coeff_to_string(const Rational& q) { return q.get_str(); }
std::string coeff_to_string(const MultiPoly& p) { return p.to_string(); }

MultiPoly lagrange_interpolate(const std::vector<std::pair<long, Rational>>& samples,
                               int degree_bound, const std::string& var) {
  if (degree_bound < 0) throw ValidationError("negative degree bound");
  if (static_cast<int>(samples.size()) < degree_bound + 1)
    throw ValidationError("not enough samples for degree bound");
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      if (samples[i].first == samples[j].first) throw ValidationError("duplicated sample point");
  const std::size_t m = static_cast<std::size_t>(degree_bound) + 1;
  // Newton divided differences on the first m samples.
  std::vector<Rational> coef(m);
  for (std::size_t i = 0; i < m; ++i) coef[i] = samples[i].second;
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i)
      coef[i] = (coef[i] - coef[i - 1]) / Rational(samples[i].first - samples[i - level].first);
  MultiPoly x = MultiPoly::variable(var);
  MultiPoly result(coef[m - 1]);
  for (std::size_t i = m - 1; i-- > 0;) {
    result = result * (x - MultiPoly(Rational(samples[i].first))) + MultiPoly(coef[i]);
  }
  for (std::size_t i = m; i < samples.size(); ++i) {
    if (result.evaluate({{var, Rational(samples[i].first)}}) != samples[i].second)
      throw InterpolationMismatch("samples are inconsistent with degree bound " +
                                  std::to_string(degree_bound));
  }
  return result;
}

Rational interpolate_at_zero(const std::vector<std::pair<long, Rational>>& samples) {
  if (samples.empty()) throw ValidationError("no samples");
  Rational out = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    Rational w = 1;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (i == j) continue;
      if (samples[i].first == samples[j].first) throw ValidationError("duplicated sample point");
      w *= make_rational(-samples[j].first, samples[i].first - samples[j].first);
    }
    out += w * samples[i].second;
  }
  return out;
}

MultiPoly faulhaber_sum(int k) {
  if (k < 0) throw ValidationError("negative power sum exponent");
  std::vector<std::pair<long, Rational>> samples;
  Rational acc = 0;
  samples.emplace_back(0, Rational(0));
  for (long x = 1; x <= k + 1; ++x) {
    acc += power(Rational(x), k);
    samples.emplace_back(x, acc);
  }
  return lagrange_interpolate(samples, k + 1, "x");
}

Integer stirling_first(int n, int k) {
  if (n < 0 || k < 0) return 0;
  std::vector<std::vector<Integer>> s(static_cast<std::size_t>(n) + 1,
                                      std::vector<Integer>(static_cast<std::size_t>(n) + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j)
      s[i][j] = s[i - 1][j - 1] - Integer(i - 1) * s[i - 1][j];
  if (k > n) return 0;
  return s[n][k];
}

std::optional<std::vector<Rational>> solve_in_row_space(
    const std::vector<std::vector<Rational>>& rows, const std::vector<Rational>& target) {
  const std::size_t m = rows.size();
  const std::size_t n = target.size();
  for (const auto& r : rows)
    if (r.size() != n) throw ValidationError("row length mismatch");
  // Solve M^T lambda = target: columns of the augmented system are the rows.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = rows[j][i];
    a[i][m] = target[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && sgn(a[sel][col]) == 0) ++sel;
    if (sel == n) continue;
    std::swap(a[sel], a[row]);
    Rational inv = 1 / a[row][col];
    for (std::size_t c = col; c <= m; ++c) a[row][c] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || sgn(a[i][col]) == 0) continue;
      Rational f = a[i][col];
      for (std::size_t c = col; c <= m; ++c) a[i][c] -= f * a[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < n; ++i)
    if (sgn(a[i][m]) != 0) return std::nullopt;
  std::vector<Rational> lambda(m, 0);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) lambda[pivot_col[i]] = a[i][m];
  return lambda;
}

}  // namespace taut
