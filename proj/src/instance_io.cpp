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

#include "rampmatch/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace rampmatch {
namespace {

using json = nlohmann::json;

int Lookup(const std::unordered_map<std::string, int>& index,
           const std::string& id, const char* what) {
  const auto it = index.find(id);
  if (it == index.end()) {
    throw Error(std::string("unknown ") + what + " id \"" + id + "\"");
  }
  return it->second;
}

const json& Field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(std::string("missing field \"") + key + "\"");
  }
  return obj.at(key);
}

}  // namespace

Instance parse_instance(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("invalid instance JSON: ") + e.what());
  }
  try {
    std::vector<Paper> papers;
    std::vector<Reviewer> reviewers;
    std::vector<std::string> regions;
    std::unordered_map<std::string, int> paper_index, reviewer_index,
        region_index;

    for (const json& jp : Field(doc, "papers")) {
      Paper p;
      p.id = Field(jp, "id").get<std::string>();
      p.demand = Field(jp, "demand").get<int>();
      if (!paper_index.emplace(p.id, static_cast<int>(papers.size())).second) {
        throw Error("duplicate paper id \"" + p.id + "\"");
      }
      papers.push_back(std::move(p));
    }
    const json& jrevs = Field(doc, "reviewers");
    for (const json& jr : jrevs) {
      Reviewer r;
      r.id = Field(jr, "id").get<std::string>();
      r.capacity = Field(jr, "capacity").get<int>();
      const std::string region = Field(jr, "region").get<std::string>();
      auto [it, fresh] =
          region_index.emplace(region, static_cast<int>(regions.size()));
      if (fresh) regions.push_back(region);
      r.region = it->second;
      r.senior = Field(jr, "senior").get<bool>();
      if (!reviewer_index.emplace(r.id, static_cast<int>(reviewers.size()))
               .second) {
        throw Error("duplicate reviewer id \"" + r.id + "\"");
      }
      reviewers.push_back(std::move(r));
    }
    // Neighborhoods and authorships may reference any reviewer, so they are
    // resolved once all ids are known.
    for (std::size_t i = 0; i < reviewers.size(); ++i) {
      const json& jr = jrevs[i];
      if (jr.contains("coauthors")) {
        for (const json& c : jr.at("coauthors")) {
          reviewers[i].coauthors.push_back(
              Lookup(reviewer_index, c.get<std::string>(), "reviewer"));
        }
      }
    }
    std::size_t pi = 0;
    for (const json& jp : doc.at("papers")) {
      if (jp.contains("authors") && !jp.at("authors").is_null()) {
        std::vector<int> authors;
        for (const json& a : jp.at("authors")) {
          authors.push_back(
              Lookup(reviewer_index, a.get<std::string>(), "reviewer"));
        }
        papers[pi].authors = std::move(authors);
      }
      ++pi;
    }

    std::vector<SimilarityEntry> sim;
    if (doc.contains("similarity")) {
      for (const json& t : doc.at("similarity")) {
        if (!t.is_array() || t.size() != 3) {
          throw Error("similarity entries must be [paper, reviewer, value]");
        }
        sim.push_back({Lookup(paper_index, t[0].get<std::string>(), "paper"),
                       Lookup(reviewer_index, t[1].get<std::string>(),
                              "reviewer"),
                       t[2].get<double>()});
      }
    }
    std::vector<BidEntry> bids;
    if (doc.contains("bids")) {
      for (const json& t : doc.at("bids")) {
        if (!t.is_array() || t.size() != 3) {
          throw Error("bid entries must be [paper, reviewer, level]");
        }
        bids.push_back({Lookup(paper_index, t[0].get<std::string>(), "paper"),
                        Lookup(reviewer_index, t[1].get<std::string>(),
                               "reviewer"),
                        parse_bid_level(t[2].get<std::string>())});
      }
    }
    std::vector<PairKey> conflicts;
    if (doc.contains("conflicts")) {
      for (const json& t : doc.at("conflicts")) {
        if (!t.is_array() || t.size() != 2) {
          throw Error("conflict entries must be [paper, reviewer]");
        }
        conflicts.push_back(
            {Lookup(paper_index, t[0].get<std::string>(), "paper"),
             Lookup(reviewer_index, t[1].get<std::string>(), "reviewer")});
      }
    }
    return make_instance(std::move(papers), std::move(reviewers),
                         std::move(regions), std::move(sim), std::move(bids),
                         std::move(conflicts));
  } catch (const json::exception& e) {
    throw Error(std::string("malformed instance: ") + e.what());
  }
}

Instance read_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

std::string serialize_instance(const Instance& inst) {
  json doc = json::object();
  json papers = json::array();
  for (const Paper& p : inst.papers) {
    json jp = {{"id", p.id}, {"demand", p.demand}};
    if (p.authors) {
      json authors = json::array();
      for (int a : *p.authors) authors.push_back(inst.reviewers[a].id);
      jp["authors"] = std::move(authors);
    }
    papers.push_back(std::move(jp));
  }
  json reviewers = json::array();
  for (const Reviewer& r : inst.reviewers) {
    json coauthors = json::array();
    for (int c : r.coauthors) coauthors.push_back(inst.reviewers[c].id);
    reviewers.push_back({{"id", r.id},
                         {"capacity", r.capacity},
                         {"region", inst.regions[r.region]},
                         {"senior", r.senior},
                         {"coauthors", std::move(coauthors)}});
  }
  json sim = json::array();
  for (const SimilarityEntry& e : inst.similarity) {
    sim.push_back(json::array(
        {inst.papers[e.paper].id, inst.reviewers[e.reviewer].id, e.value}));
  }
  json bids = json::array();
  for (const BidEntry& b : inst.bids) {
    bids.push_back(json::array({inst.papers[b.paper].id,
                                inst.reviewers[b.reviewer].id,
                                std::string(bid_level_name(b.level))}));
  }
  json conflicts = json::array();
  for (const PairKey& c : inst.conflicts) {
    conflicts.push_back(json::array(
        {inst.papers[c.paper].id, inst.reviewers[c.reviewer].id}));
  }
  doc["papers"] = std::move(papers);
  doc["reviewers"] = std::move(reviewers);
  doc["similarity"] = std::move(sim);
  doc["bids"] = std::move(bids);
  doc["conflicts"] = std::move(conflicts);
  return doc.dump();
}

void write_instance(const Instance& inst, const std::string& path) {
  write_file(path, serialize_instance(inst));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("write failed for " + path);
}

}  // namespace rampmatch
