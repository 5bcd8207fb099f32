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

#include "rampmatch/linear_program.hpp"

#include <algorithm>
#include <cmath>

#include "rampmatch/model.hpp"

namespace rampmatch {

std::uint64_t LinearProgram::Pack(VarKey key) {
  return (static_cast<std::uint64_t>(key.kind) << 60) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(key.a)) << 30) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(key.b));
}

void LinearProgram::reserve(int vars, int rows, std::int64_t nonzeros) {
  lb_.reserve(vars);
  ub_.reserve(vars);
  obj_.reserve(vars);
  var_keys_.reserve(vars);
  row_keys_.reserve(rows);
  rel_.reserve(rows);
  rhs_.reserve(rows);
  row_start_.reserve(static_cast<std::size_t>(rows) + 1);
  col_.reserve(nonzeros);
  val_.reserve(nonzeros);
}

int LinearProgram::add_variable(VarKey key, double lb, double ub,
                                double objective) {
  if (key.kind == VarKind::kNamed) {
    throw Error("named variables must be added by name");
  }
  if (lb > ub || std::isnan(lb) || std::isnan(ub)) {
    throw Error("variable bounds out of order");
  }
  const int j = num_variables();
  if (!var_index_.emplace(Pack(key), j).second) {
    throw Error("variable registered twice");
  }
  lb_.push_back(lb);
  ub_.push_back(ub);
  obj_.push_back(objective);
  var_keys_.push_back(key);
  return j;
}

int LinearProgram::add_variable(const std::string& name, double lb, double ub,
                                double objective) {
  if (lb > ub || std::isnan(lb) || std::isnan(ub)) {
    throw Error("variable bounds out of order for " + name);
  }
  const int j = num_variables();
  if (!named_index_.emplace(name, j).second) {
    throw Error("variable " + name + " registered twice");
  }
  lb_.push_back(lb);
  ub_.push_back(ub);
  obj_.push_back(objective);
  var_keys_.push_back({VarKind::kNamed, static_cast<int>(var_names_.size()), 0});
  var_names_.push_back(name);
  return j;
}

int LinearProgram::add_row(RowKey key, std::span<const int> cols,
                           std::span<const double> vals, Relation rel,
                           double rhs) {
  if (cols.size() != vals.size()) throw Error("row size mismatch");
  for (int c : cols) {
    if (c < 0 || c >= num_variables()) {
      throw Error("row references an unregistered variable");
    }
  }
  col_.insert(col_.end(), cols.begin(), cols.end());
  val_.insert(val_.end(), vals.begin(), vals.end());
  row_start_.push_back(static_cast<std::int64_t>(col_.size()));
  rel_.push_back(rel);
  rhs_.push_back(rhs);
  row_keys_.push_back(key);
  return num_rows() - 1;
}

int LinearProgram::add_row(const std::string& name, std::span<const int> cols,
                           std::span<const double> vals, Relation rel,
                           double rhs) {
  const int i = add_row(RowKey{RowKind::kNamed,
                               static_cast<int>(row_names_.size()), 0},
                        cols, vals, rel, rhs);
  row_names_.push_back(name);
  return i;
}

std::string LinearProgram::var_name(int j) const {
  const VarKey k = var_keys_[j];
  const std::string a = std::to_string(k.a);
  const std::string b = std::to_string(k.b);
  switch (k.kind) {
    case VarKind::kX:
      return "x_p" + a + "_r" + b;
    case VarKind::kSDiv:
      return "sdiv_p" + a + "_g" + b;
    case VarKind::kSCo:
      return "sco_p" + a + "_r" + b;
    case VarKind::kT:
      return "t" + a;
    case VarKind::kY:
      return "y_c" + a;
    case VarKind::kSSen:
      return "ssen_p" + a;
    case VarKind::kNamed:
      return var_names_[k.a];
  }
  return {};
}

std::string LinearProgram::row_name(int i) const {
  const RowKey k = row_keys_[i];
  const std::string a = std::to_string(k.a);
  const std::string b = std::to_string(k.b);
  switch (k.kind) {
    case RowKind::kDemand:
      return "dem_p" + a;
    case RowKind::kCapacity:
      return "cap_r" + a;
    case RowKind::kDiv:
      return "div_p" + a + "_g" + b;
    case RowKind::kCo:
      return "co_p" + a + "_r" + b;
    case RowKind::kCyc:
      return "cyc_c" + a;
    case RowKind::kSen:
      return "sen_p" + a;
    case RowKind::kPwl:
      return "pwl_t" + a + "_" + b;
    case RowKind::kNamed:
      return row_names_[k.a];
  }
  return {};
}

std::optional<int> LinearProgram::find_variable(VarKey key) const {
  if (key.kind == VarKind::kNamed) {
    if (key.a < 0 || key.a >= static_cast<int>(var_names_.size())) {
      return std::nullopt;
    }
    return find_variable(var_names_[key.a]);
  }
  const auto it = var_index_.find(Pack(key));
  if (it == var_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> LinearProgram::find_variable(const std::string& name) const {
  const auto it = named_index_.find(name);
  if (it != named_index_.end()) return it->second;
  for (int j = 0; j < num_variables(); ++j) {
    if (var_keys_[j].kind != VarKind::kNamed && var_name(j) == name) return j;
  }
  return std::nullopt;
}

double LinearProgram::evaluate_objective(std::span<const double> x) const {
  double total = 0.0;
  for (int j = 0; j < num_variables(); ++j) total += obj_[j] * x[j];
  for (const ConcaveTerm& t : concave_) total += t(x[t.var]);
  return total;
}

double LinearProgram::row_activity(int i, std::span<const double> x) const {
  double s = 0.0;
  for (std::int64_t k = row_start_[i]; k < row_start_[i + 1]; ++k) {
    s += val_[k] * x[col_[k]];
  }
  return s;
}

double LinearProgram::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max({worst, lb_[j] - x[j], x[j] - ub_[j]});
  }
  for (int i = 0; i < num_rows(); ++i) {
    const double a = row_activity(i, x);
    switch (rel_[i]) {
      case Relation::kLe:
        worst = std::max(worst, a - rhs_[i]);
        break;
      case Relation::kGe:
        worst = std::max(worst, rhs_[i] - a);
        break;
      case Relation::kEq:
        worst = std::max(worst, std::fabs(a - rhs_[i]));
        break;
    }
  }
  return worst;
}

}  // namespace rampmatch
