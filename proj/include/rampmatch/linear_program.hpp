// Copyright 2026 The rampmatch Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RAMPMATCH_LINEAR_PROGRAM_HPP_
#define RAMPMATCH_LINEAR_PROGRAM_HPP_

// A maximization program with bounded variables and linear rows, stored in
// compressed sparse row form. Before linearization it may also carry
// separable concave terms h(v) = lin * v - quad * v^2.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace rampmatch {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation : std::uint8_t { kLe, kEq, kGe };

// Structured variable names. Indices refer to papers, reviewers, regions,
// cycles or epigraph counters depending on the kind.
enum class VarKind : std::uint8_t { kX, kSDiv, kSCo, kT, kY, kSSen, kNamed };

struct VarKey {
  VarKind kind;
  std::int32_t a = 0;
  std::int32_t b = 0;
  friend bool operator==(const VarKey&, const VarKey&) = default;
};

enum class RowKind : std::uint8_t {
  kDemand,
  kCapacity,
  kDiv,
  kCo,
  kCyc,
  kSen,
  kPwl,
  kNamed
};

struct RowKey {
  RowKind kind;
  std::int32_t a = 0;
  std::int32_t b = 0;
  friend bool operator==(const RowKey&, const RowKey&) = default;
};

struct ConcaveTerm {
  int var;
  double lin;
  double quad;  // >= 0
  double operator()(double v) const { return lin * v - quad * v * v; }
};

class LinearProgram {
 public:
  int add_variable(VarKey key, double lb, double ub, double objective = 0.0);
  int add_variable(const std::string& name, double lb, double ub,
                   double objective = 0.0);
  int add_row(RowKey key, std::span<const int> cols,
              std::span<const double> vals, Relation rel, double rhs);
  int add_row(const std::string& name, std::span<const int> cols,
              std::span<const double> vals, Relation rel, double rhs);
  void add_concave(ConcaveTerm term) { concave_.push_back(term); }
  void reserve(int vars, int rows, std::int64_t nonzeros);

  void set_objective(int var, double c) { obj_[var] = c; }
  void add_objective(int var, double c) { obj_[var] += c; }

  int num_variables() const { return static_cast<int>(lb_.size()); }
  int num_rows() const { return static_cast<int>(rhs_.size()); }
  std::int64_t num_nonzeros() const { return row_start_.back(); }

  double lower(int j) const { return lb_[j]; }
  double upper(int j) const { return ub_[j]; }
  double objective(int j) const { return obj_[j]; }
  const std::vector<double>& lower() const { return lb_; }
  const std::vector<double>& upper() const { return ub_; }
  const std::vector<double>& objective() const { return obj_; }

  Relation relation(int i) const { return rel_[i]; }
  double rhs(int i) const { return rhs_[i]; }
  std::span<const int> row_cols(int i) const {
    return {col_.data() + row_start_[i],
            static_cast<std::size_t>(row_start_[i + 1] - row_start_[i])};
  }
  std::span<const double> row_vals(int i) const {
    return {val_.data() + row_start_[i],
            static_cast<std::size_t>(row_start_[i + 1] - row_start_[i])};
  }
  const std::vector<std::int64_t>& row_start() const { return row_start_; }
  const std::vector<int>& cols() const { return col_; }
  const std::vector<double>& vals() const { return val_; }

  const std::vector<ConcaveTerm>& concave() const { return concave_; }
  bool is_linear() const { return concave_.empty(); }
  void clear_concave() { concave_.clear(); }

  VarKey var_key(int j) const { return var_keys_[j]; }
  RowKey row_key(int i) const { return row_keys_[i]; }
  std::string var_name(int j) const;
  std::string row_name(int i) const;
  std::optional<int> find_variable(VarKey key) const;
  // Linear in the number of variables for structured names.
  std::optional<int> find_variable(const std::string& name) const;

  // Objective including concave terms.
  double evaluate_objective(std::span<const double> x) const;
  double row_activity(int i, std::span<const double> x) const;
  // Largest bound or row violation at x.
  double max_violation(std::span<const double> x) const;

 private:
  static std::uint64_t Pack(VarKey key);

  std::vector<double> lb_, ub_, obj_;
  std::vector<VarKey> var_keys_;
  std::vector<RowKey> row_keys_;
  std::vector<std::string> var_names_;  // for kNamed keys
  std::vector<std::string> row_names_;
  std::unordered_map<std::uint64_t, int> var_index_;
  std::unordered_map<std::string, int> named_index_;

  std::vector<std::int64_t> row_start_{0};
  std::vector<int> col_;
  std::vector<double> val_;
  std::vector<Relation> rel_;
  std::vector<double> rhs_;

  std::vector<ConcaveTerm> concave_;
};

}  // namespace rampmatch

#endif  // RAMPMATCH_LINEAR_PROGRAM_HPP_
