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

#include "rampmatch/lp_format.hpp"

#include <charconv>
#include <cmath>

#include "rampmatch/model.hpp"

namespace rampmatch {
namespace {

constexpr std::size_t kWrapColumn = 200;

// Accumulates "+ c name" terms, breaking lines before they grow too long.
class TermWriter {
 public:
  TermWriter(std::string& out, std::string head)
      : out_(out), line_(std::move(head)) {}

  void Add(double coef, const std::string& name) {
    std::string term;
    if (coef < 0.0) {
      term = "- " + format_double(-coef);
    } else {
      term = "+ " + format_double(coef);
    }
    term += ' ';
    term += name;
    if (line_.size() + term.size() + 1 > kWrapColumn) {
      out_ += line_;
      out_ += '\n';
      line_ = "   ";
    }
    line_ += ' ';
    line_ += term;
  }

  void Finish(const std::string& tail) {
    out_ += line_;
    out_ += tail;
    out_ += '\n';
  }

 private:
  std::string& out_;
  std::string line_;
};

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string export_lp_text(const LinearProgram& lp) {
  if (!lp.is_linear()) {
    throw Error("cannot export a program with concave terms; linearize first");
  }
  const int n = lp.num_variables();
  std::vector<std::string> names(n);
  for (int j = 0; j < n; ++j) names[j] = lp.var_name(j);

  std::string out = "\\ rampmatch assignment program\nMaximize\n";
  {
    TermWriter w(out, " obj:");
    bool any = false;
    for (int j = 0; j < n; ++j) {
      if (lp.objective(j) != 0.0) {
        w.Add(lp.objective(j), names[j]);
        any = true;
      }
    }
    if (!any && n > 0) w.Add(0.0, names[0]);
    w.Finish("");
  }

  out += "Subject To\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    TermWriter w(out, " " + lp.row_name(i) + ":");
    const auto cols = lp.row_cols(i);
    const auto vals = lp.row_vals(i);
    for (std::size_t k = 0; k < cols.size(); ++k) w.Add(vals[k], names[cols[k]]);
    if (cols.empty() && n > 0) w.Add(0.0, names[0]);
    const char* rel = lp.relation(i) == Relation::kLe   ? " <= "
                      : lp.relation(i) == Relation::kGe ? " >= "
                                                        : " = ";
    w.Finish(rel + format_double(lp.rhs(i)));
  }

  out += "Bounds\n";
  for (int j = 0; j < n; ++j) {
    const double lo = lp.lower(j);
    const double hi = lp.upper(j);
    const std::string& v = names[j];
    if (std::isinf(lo) && std::isinf(hi)) {
      out += " " + v + " free\n";
    } else if (lo == hi) {
      out += " " + v + " = " + format_double(lo) + "\n";
    } else if (std::isinf(lo)) {
      out += " -inf <= " + v + " <= " + format_double(hi) + "\n";
    } else if (std::isinf(hi)) {
      out += " " + v + " >= " + format_double(lo) + "\n";
    } else {
      out += " " + format_double(lo) + " <= " + v + " <= " +
             format_double(hi) + "\n";
    }
  }
  out += "End\n";
  return out;
}

}  // namespace rampmatch
