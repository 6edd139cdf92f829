// Copyright 2026 The qop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qop/pauli.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "qop/error.hpp"

namespace qop {

namespace {

constexpr cplx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::uint64_t qubit_mask(int n) {
  return n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

PauliTerm::PauliTerm(int num_qubits, std::uint64_t x_bits, std::uint64_t z_bits)
    : n(num_qubits), x(x_bits), z(z_bits) {
  require(num_qubits >= 1 && num_qubits <= kMaxQubits,
          "qubit count must be in [1, 63], got " + std::to_string(num_qubits));
  require(((x_bits | z_bits) & ~qubit_mask(num_qubits)) == 0,
          "Pauli bits set beyond qubit count");
}

PauliTerm PauliTerm::single(int num_qubits, int qubit, char pauli) {
  require(qubit >= 0 && qubit < num_qubits,
          "qubit index " + std::to_string(qubit) + " out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (pauli) {
    case 'I': return PauliTerm(num_qubits, 0, 0);
    case 'X': return PauliTerm(num_qubits, bit, 0);
    case 'Y': return PauliTerm(num_qubits, bit, bit);
    case 'Z': return PauliTerm(num_qubits, 0, bit);
    default: throw ValidationError(std::string("unknown Pauli letter '") + pauli + "'");
  }
}

PauliTerm PauliTerm::parse(std::string_view text) {
  text = trim(text);
  require(!text.empty(), "empty Pauli string");
  const int n = static_cast<int>(text.size());
  require(n <= kMaxQubits, "Pauli string longer than 63 qubits");
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (text[q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw ValidationError("invalid character '" + std::string(1, text[q]) +
                              "' in Pauli string \"" + std::string(text) + "\"");
    }
  }
  return PauliTerm(n, x, z);
}

bool PauliTerm::commutes_with(const PauliTerm& other) const {
  return (std::popcount((x & other.z) ^ (z & other.x)) & 1) == 0;
}

char PauliTerm::pauli_at(int qubit) const {
  const bool xb = (x >> qubit) & 1, zb = (z >> qubit) & 1;
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

std::string PauliTerm::to_string() const {
  std::string s(n, 'I');
  for (int q = 0; q < n; ++q) s[q] = pauli_at(q);
  return s;
}

Eigen::MatrixXcd PauliTerm::to_matrix() const {
  const std::size_t d = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  const cplx phase = kIPowers[std::popcount(x & z) & 3];
  for (std::size_t b = 0; b < d; ++b) {
    const double sign = (std::popcount(z & b) & 1) ? -1.0 : 1.0;
    m(b ^ x, b) = phase * sign;
  }
  return m;
}

PauliProduct multiply(const PauliTerm& a, const PauliTerm& b) {
  require(a.n == b.n, "Pauli product of strings on different qubit counts");
  // a b = i^{|a|+|b|} X^xa Z^za X^xb Z^zb = i^{|a|+|b|+2|za&xb|} X^(xa^xb) Z^(za^zb)
  const std::uint64_t x = a.x ^ b.x, z = a.z ^ b.z;
  const int exponent = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) -
                       std::popcount(x & z) + 2 * std::popcount(a.z & b.x);
  PauliProduct out;
  out.phase = ((exponent % 4) + 4) % 4;
  out.term.n = a.n;
  out.term.x = x;
  out.term.z = z;
  return out;
}

void apply_pauli(const PauliTerm& p, std::span<const cplx> in, std::span<cplx> out) {
  std::fill(out.begin(), out.end(), cplx{0, 0});
  accumulate_pauli(p, 1.0, in, out);
}

void accumulate_pauli(const PauliTerm& p, cplx coeff, std::span<const cplx> in,
                      std::span<cplx> out) {
  const std::size_t d = std::size_t{1} << p.n;
  require(in.size() == d && out.size() == d, "state size does not match Pauli string");
  const cplx phase = coeff * kIPowers[std::popcount(p.x & p.z) & 3];
  for (std::size_t b = 0; b < d; ++b) {
    const cplx v = (std::popcount(p.z & b) & 1) ? -in[b] : in[b];
    out[b ^ p.x] += phase * v;
  }
}

PauliSum::PauliSum(int num_qubits) : n_(num_qubits) {
  require(num_qubits >= 1 && num_qubits <= kMaxQubits, "qubit count must be in [1, 63]");
}

PauliSum::PauliSum(const PauliTerm& term, const mpq_class& coeff) : n_(term.n) {
  add_term(term, coeff);
}

void PauliSum::add_term(const PauliTerm& term, const mpq_class& coeff) {
  require(term.n == n_, "term qubit count " + std::to_string(term.n) +
                            " does not match sum qubit count " + std::to_string(n_));
  if (sgn(coeff) == 0) return;
  auto [it, inserted] = terms_.try_emplace(term, coeff);
  if (!inserted) {
    it->second += coeff;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void PauliSum::check_compatible(const PauliSum& other) const {
  require(n_ == other.n_ || n_ == 0 || other.n_ == 0,
          "mismatched qubit counts: " + std::to_string(n_) + " vs " + std::to_string(other.n_));
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_compatible(other);
  if (n_ == 0) n_ = other.n_;
  for (const auto& [t, c] : other.terms_) add_term(t, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  check_compatible(other);
  if (n_ == 0) n_ = other.n_;
  for (const auto& [t, c] : other.terms_) add_term(t, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(const mpq_class& scalar) {
  if (sgn(scalar) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, c] : terms_) c *= scalar;
  return *this;
}

bool PauliSum::has_identity() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.first.is_identity(); });
}

bool PauliSum::terms_commute() const {
  for (auto i = terms_.begin(); i != terms_.end(); ++i)
    for (auto j = std::next(i); j != terms_.end(); ++j)
      if (!i->first.commutes_with(j->first)) return false;
  return true;
}

std::vector<std::pair<double, PauliTerm>> PauliSum::numeric_terms() const {
  std::vector<std::pair<double, PauliTerm>> out;
  out.reserve(terms_.size());
  for (const auto& [t, c] : terms_) out.emplace_back(c.get_d(), t);
  return out;
}

void PauliSum::apply(std::span<const cplx> in, std::span<cplx> out) const {
  std::fill(out.begin(), out.end(), cplx{0, 0});
  for (const auto& [t, c] : terms_) accumulate_pauli(t, c.get_d(), in, out);
}

Eigen::MatrixXcd PauliSum::to_matrix() const {
  require(n_ >= 1 && n_ <= 12, "dense matrix requested for too many qubits");
  const std::size_t d = std::size_t{1} << n_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [t, c] : terms_) m += c.get_d() * t.to_matrix();
  return m;
}

std::string PauliSum::to_string() const {
  std::ostringstream os;
  for (const auto& [t, c] : terms_) os << c.get_str() << '\t' << t.to_string() << '\n';
  return os.str();
}

PauliSum PauliSum::parse(std::string_view text) {
  PauliSum out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t sep = line.find_first_of(" \t");
    require(sep != std::string_view::npos,
            "line " + std::to_string(line_no) + ": expected \"coeff<TAB>string\"");
    const mpq_class coeff = parse_rational(line.substr(0, sep));
    const PauliTerm term = PauliTerm::parse(line.substr(sep + 1));
    if (out.n_ == 0) out.n_ = term.n;
    require(term.n == out.n_, "line " + std::to_string(line_no) + ": qubit count mismatch");
    out.add_term(term, coeff);
    if (end == text.size()) break;
  }
  return out;
}

mpq_class parse_rational(std::string_view text) {
  std::string s(trim(text));
  require(!s.empty(), "empty coefficient");
  try {
    if (s.find_first_of(".eE") == std::string::npos) {
      if (!s.empty() && s.front() == '+') s.erase(0, 1);
      mpq_class q(s, 10);
      require(sgn(q.get_den()) != 0, "zero denominator in \"" + s + "\"");
      q.canonicalize();
      return q;
    }
    // Exact decimal: mantissa digits over a power of ten.
    std::size_t epos = s.find_first_of("eE");
    long exponent = 0;
    std::string mant = s.substr(0, epos);
    if (epos != std::string::npos) exponent = std::stol(s.substr(epos + 1));
    bool negative = false;
    if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
      negative = mant.front() == '-';
      mant.erase(0, 1);
    }
    const std::size_t dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
      exponent -= static_cast<long>(mant.size() - dot - 1);
      digits = mant.substr(0, dot) + mant.substr(dot + 1);
    }
    require(!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos,
            "malformed coefficient \"" + std::string(text) + "\"");
    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    mpq_class q = exponent >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
  } catch (const std::invalid_argument&) {
    throw ValidationError("malformed coefficient \"" + std::string(text) + "\"");
  }
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  require(a.num_qubits() == b.num_qubits(),
          "commutator of operators on different qubit counts");
  PauliSum out(a.num_qubits());
  for (const auto& [p, cp] : a.terms()) {
    for (const auto& [q, cq] : b.terms()) {
      if (p.commutes_with(q)) continue;
      const PauliProduct pq = multiply(p, q);
      // phase is 1 or 3 here: [P,Q] = 2 i^k R = i * (2 i^{k-1}) R
      const int sign = pq.phase == 1 ? 1 : -1;
      out.add_term(pq.term, mpq_class(2 * sign) * cp * cq);
    }
  }
  return out;
}

}  // namespace qop
