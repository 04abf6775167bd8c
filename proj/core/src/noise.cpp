#include "pathsim/noise.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pathsim {

NoiseChannel NoiseChannel::depolarizing(SupportMask support, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing probability out of range");
  if (support.none()) throw std::invalid_argument("depolarizing channel needs a non-empty support");
  NoiseChannel ch;
  ch.support_ = std::move(support);
  ch.rule_ = Rule::Depolarizing;
  ch.p_ = p;
  return ch;
}

NoiseChannel NoiseChannel::explicit_table(SupportMask support,
                                          std::map<std::string, double> table) {
  NoiseChannel ch;
  ch.support_ = std::move(support);
  ch.rule_ = Rule::ExplicitTable;
  ch.table_ = std::move(table);
  int k = ch.support_.popcount();
  std::string id(k, 'I');
  auto it = ch.table_.find(id);
  if (it != ch.table_.end() && std::abs(it->second - 1.0) > 1e-12)
    throw std::invalid_argument("explicit table must fix the identity at 1");
  ch.table_[id] = 1.0;
  for (const auto& [lit, e] : ch.table_) {
    if (int(lit.size()) != k) throw std::invalid_argument("table literal length mismatch");
    if (std::abs(e) > 1.0 + 1e-12) throw std::invalid_argument("|eigenvalue| > 1 in table");
  }
  return ch;
}

double NoiseChannel::eigenvalue(const PauliString& p) const {
  if (p.n() < support_.size()) throw std::invalid_argument("Pauli too small for channel support");
  bool trivial = true;
  support_.for_each_set([&](int q) {
    if (p.x_mask().test(q) || p.z_mask().test(q)) trivial = false;
  });
  if (trivial) return 1.0;
  if (rule_ == Rule::Depolarizing) return 1.0 - p_;
  // Restrict to the support qubits and look the pattern up.
  std::string lit = p.restricted_to(support_).canonical().to_literal();
  auto it = table_.find(lit);
  if (it == table_.end())
    throw std::out_of_range("noise table has no entry for pattern " + lit);
  return it->second;
}

double NoiseChannel::spectral_gap() const {
  double max_sub_unit = 0.0;
  bool found = false;
  if (rule_ == Rule::Depolarizing) {
    if (std::abs(1.0 - p_) != 1.0) {
      max_sub_unit = std::abs(1.0 - p_);
      found = true;
    }
  } else {
    for (const auto& [lit, e] : table_) {
      if (std::abs(e) != 1.0) {
        max_sub_unit = std::max(max_sub_unit, std::abs(e));
        found = true;
      }
    }
  }
  return found ? 1.0 - max_sub_unit : 1.0;
}

bool NoiseChannel::noise_penalisation_holds() const {
  if (rule_ == Rule::Depolarizing) return p_ > 0.0;
  double gamma = spectral_gap();
  int k = support_.popcount();
  std::string id(k, 'I');
  for (const auto& [lit, e] : table_) {
    if (lit == id) continue;
    if (std::abs(e) > 1.0 - gamma + 1e-15 || gamma <= 0.0) return false;
  }
  return true;
}

std::string NoiseChannel::describe() const {
  std::ostringstream os;
  os << (rule_ == Rule::Depolarizing ? "depol" : "table") << "[";
  bool first = true;
  support_.for_each_set([&](int q) {
    if (!first) os << ",";
    os << q;
    first = false;
  });
  os << "]";
  if (rule_ == Rule::Depolarizing)
    os << " p=" << p_;
  else
    for (const auto& [lit, e] : table_) os << " " << lit << ":" << e;
  return os.str();
}

NoiseChannel make_depolarizing(SupportMask support, double p) {
  return NoiseChannel::depolarizing(std::move(support), p);
}

double eigenvalue(const NoiseChannel& ch, const PauliString& p) { return ch.eigenvalue(p); }

SpectralGap spectral_gap(const NoiseChannel& ch) { return {ch.spectral_gap()}; }

std::string local_pauli_literal(int k, int index) {
  static const char letters[] = {'I', 'X', 'Y', 'Z'};
  std::string s(k, 'I');
  for (int j = k - 1; j >= 0; --j) {
    s[j] = letters[index & 3];
    index >>= 2;
  }
  return s;
}

int local_pauli_index(const PauliString& local) {
  int idx = 0;
  for (int j = 0; j < local.n(); ++j) {
    bool xb = local.x_mask().test(j), zb = local.z_mask().test(j);
    int letter = xb ? (zb ? 2 : 1) : (zb ? 3 : 0);
    idx = idx * 4 + letter;
  }
  return idx;
}

DephasedChannel dephase_diagonal(const std::vector<double>& transfer, SupportMask support) {
  int k = support.popcount();
  size_t dim = size_t(1) << (2 * k);
  if (transfer.size() != dim * dim)
    throw std::invalid_argument("transfer matrix has wrong dimension for support");
  for (size_t j = 0; j < dim; ++j) {
    double expect = (j == 0) ? 1.0 : 0.0;
    if (std::abs(transfer[0 * dim + j] - expect) > 1e-10)
      throw std::invalid_argument("transfer matrix does not preserve the identity row");
  }
  double residual = 0.0;
  std::map<std::string, double> table;
  for (size_t i = 0; i < dim; ++i) {
    for (size_t j = 0; j < dim; ++j) {
      if (i == j) continue;
      residual = std::max(residual, std::abs(transfer[i * dim + j]));
    }
    table[local_pauli_literal(k, int(i))] = transfer[i * dim + i];
  }
  return {NoiseChannel::explicit_table(std::move(support), std::move(table)), residual};
}

std::string explicit_table_to_json(const NoiseChannel& ch) {
  if (ch.rule() != NoiseChannel::Rule::ExplicitTable)
    throw std::invalid_argument("JSON serialization is for explicit tables");
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [lit, e] : ch.table()) j[lit] = e;
  return j.dump();
}

NoiseChannel explicit_table_from_json(SupportMask support, const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  std::map<std::string, double> table;
  for (auto it = j.begin(); it != j.end(); ++it) table[it.key()] = it.value().get<double>();
  return NoiseChannel::explicit_table(std::move(support), std::move(table));
}

}  // namespace pathsim
