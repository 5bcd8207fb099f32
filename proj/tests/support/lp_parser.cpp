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

#include "support/lp_parser.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rampmatch::testing {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::vector<std::string> Tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

double Number(const std::string& t) {
  if (t == "inf" || t == "+inf" || t == "infinity") return kInfinity;
  if (t == "-inf" || t == "-infinity") return -kInfinity;
  std::size_t used = 0;
  const double v = std::stod(t, &used);
  if (used != t.size()) throw std::runtime_error("bad number " + t);
  return v;
}

bool IsNumber(const std::string& t) {
  if (t.empty()) return false;
  try {
    Number(t);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

class Reader {
 public:
  explicit Reader(ParsedLp& lp) : lp_(lp) {}

  void Note(const std::string& name) {
    if (seen_.emplace(name, 1).second) lp_.variables.push_back(name);
  }

  // Parses "[+|-] coef name" sequences, stopping at a relation token.
  std::size_t Terms(const std::vector<std::string>& tok, std::size_t i,
                    std::map<std::string, double>& terms) {
    while (i < tok.size()) {
      const std::string& t = tok[i];
      if (t == "<=" || t == ">=" || t == "=" || t == "<" || t == ">") break;
      double sign = 1.0;
      if (t == "+" || t == "-") {
        sign = t == "-" ? -1.0 : 1.0;
        ++i;
      }
      if (i >= tok.size()) throw std::runtime_error("dangling sign");
      double coef = 1.0;
      if (IsNumber(tok[i])) {
        coef = Number(tok[i]);
        ++i;
      }
      if (i >= tok.size()) throw std::runtime_error("missing variable");
      const std::string& name = tok[i++];
      Note(name);
      terms[name] += sign * coef;
    }
    return i;
  }

 private:
  ParsedLp& lp_;
  std::map<std::string, int> seen_;
};

}  // namespace

ParsedLp parse_lp(const std::string& text) {
  ParsedLp lp;
  Reader reader(lp);
  std::istringstream in(text);
  std::string line;
  enum class Section { kNone, kObjective, kRows, kBounds, kEnd } sec =
      Section::kNone;
  std::string pending;  // statement being accumulated across lines
  auto flush = [&](Section s) {
    if (pending.empty()) return;
    std::vector<std::string> tok = Tokens(pending);
    pending.clear();
    std::string name;
    if (!tok.empty() && tok[0].back() == ':') {
      name = tok[0].substr(0, tok[0].size() - 1);
      tok.erase(tok.begin());
    }
    if (s == Section::kObjective) {
      reader.Terms(tok, 0, lp.objective);
    } else if (s == Section::kRows) {
      ParsedRow row;
      row.name = name;
      std::size_t i = reader.Terms(tok, 0, row.terms);
      if (i + 2 != tok.size()) throw std::runtime_error("bad row " + name);
      row.rel = tok[i] == "=" ? '=' : tok[i][0];
      row.rhs = Number(tok[i + 1]);
      lp.rows.push_back(std::move(row));
    }
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '\\') continue;
    const std::vector<std::string> tok = Tokens(line);
    if (tok.empty()) continue;
    const std::string head = tok[0];
    Section next = sec;
    if (head == "Maximize" || head == "Minimize") {
      lp.maximize = head == "Maximize";
      next = Section::kObjective;
    } else if (head == "Subject") {
      next = Section::kRows;
    } else if (head == "Bounds") {
      next = Section::kBounds;
    } else if (head == "End") {
      next = Section::kEnd;
    }
    if (next != sec) {
      flush(sec);
      sec = next;
      continue;
    }
    if (sec == Section::kBounds) {
      std::string name;
      double lo = 0.0, hi = kInfinity;
      if (tok.size() == 2 && tok[1] == "free") {
        name = tok[0];
        lo = -kInfinity;
      } else if (tok.size() == 3 && tok[1] == "=") {
        name = tok[0];
        lo = hi = Number(tok[2]);
      } else if (tok.size() == 3 && tok[1] == ">=") {
        name = tok[0];
        lo = Number(tok[2]);
      } else if (tok.size() == 3 && tok[1] == "<=") {
        name = tok[0];
        hi = Number(tok[2]);
      } else if (tok.size() == 5 && tok[1] == "<=" && tok[3] == "<=") {
        lo = Number(tok[0]);
        name = tok[2];
        hi = Number(tok[4]);
      } else {
        throw std::runtime_error("bad bound line: " + line);
      }
      reader.Note(name);
      lp.bounds[name] = {lo, hi};
      continue;
    }
    // A labelled line starts a new statement; continuation lines do not.
    if (head.back() == ':' && !pending.empty()) flush(sec);
    if (sec == Section::kObjective || sec == Section::kRows) {
      pending += ' ';
      pending += line;
    } else if (sec != Section::kEnd) {
      throw std::runtime_error("text outside a section: " + line);
    }
  }
  flush(sec);
  if (sec != Section::kEnd) throw std::runtime_error("missing End");
  for (const std::string& v : lp.variables) {
    lp.bounds.emplace(v, std::make_pair(0.0, kInfinity));
  }
  return lp;
}

}  // namespace rampmatch::testing
