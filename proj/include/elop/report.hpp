/*
   Copyright 2026 The elop authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ELOP_REPORT_HPP
#define ELOP_REPORT_HPP

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "elop/criteria.hpp"
#include "elop/elementary.hpp"
#include "elop/witnesses.hpp"

namespace elop {

using Json = nlohmann::ordered_json;

/// FNV-1a over the raw config text; embedded in every report so outputs are
/// traceable to the exact configuration that produced them.
inline std::string config_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace detail {

inline Json scalar_json(const Scalar& v) {
  Json j;
  const double d = v.to_double_clamped();
  j["value"] = std::isfinite(d) ? Json(d) : Json(nullptr);
  if (v.is_exact()) j["exact"] = v.text();
  return j;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV value column: the exact decimal expansion when the dyadic admits one,
/// the shortest binary64 rendering otherwise.
inline std::string csv_value(const Scalar& v) {
  if (v.is_exact()) {
    if (const auto dec = v.dyadic().to_decimal()) return *dec;
  }
  const double d = v.to_double_clamped();
  return std::isfinite(d) ? format_double(d) : "";
}

}  // namespace detail

inline Json to_json(const CriterionReport& rep) {
  Json j;
  j["kind"] = "criterion";
  j["criterion"] = rep.id;
  j["family"] = rep.family;
  j["parameters"] = Json::object();
  for (const auto& [key, value] : rep.parameters) j["parameters"][key] = value;
  j["decay"] = Json::array();
  for (const auto& row : rep.decay) {
    Json r;
    r["k"] = row.k;
    r["n"] = row.n;
    r["quantity"] = row.quantity;
    const Json sv = detail::scalar_json(row.value);
    r["value"] = sv["value"];
    if (sv.contains("exact")) r["exact"] = sv["exact"];
    j["decay"].push_back(std::move(r));
  }
  j["verdict"] = to_string(rep.verdict);
  j["notes"] = rep.notes;
  return j;
}

inline Json to_json(const SplitWitness& split) {
  Json j;
  j["m"] = split.m;
  j["per_k"] = Json::array();
  for (const auto& e : split.per_k) {
    Json r;
    r["k"] = e.k;
    r["n"] = e.n;
    r["E"] = e.e.indices();
    r["R"] = e.r.indices();
    r["forward_norm"] = detail::scalar_json(e.forward_norm);
    r["backward_norm"] = detail::scalar_json(e.backward_norm);
    j["per_k"].push_back(std::move(r));
  }
  j["verdict"] = to_string(split.verdict);
  return j;
}

inline Json to_json(const WitnessRun& run) {
  Json j;
  j["kind"] = "witness";
  j["witness"] = run.kind;
  j["parameters"] = Json::object();
  for (const auto& [key, value] : run.parameters) j["parameters"][key] = value;
  j["records"] = Json::array();
  for (const auto& rec : run.records) {
    Json r;
    r["k"] = rec.k;
    r["n"] = rec.n;
    for (const auto& [name, v] : rec.values) r[name] = std::isfinite(v) ? Json(v) : Json(nullptr);
    if (!rec.exact.empty()) {
      r["exact"] = Json::object();
      for (const auto& [name, text] : rec.exact) r["exact"][name] = text;
    }
    if (!rec.witness_triplets.empty()) {
      r["witness"] = Json::array();
      for (const auto& t : rec.witness_triplets) r["witness"].push_back({t[0], t[1], t[2]});
    }
    j["records"].push_back(std::move(r));
  }
  j["verdict"] = to_string(run.verdict);
  j["notes"] = run.notes;
  return j;
}

inline Json to_json(const std::vector<OrbitPoint>& profile) {
  Json j;
  j["kind"] = "orbit";
  j["points"] = Json::array();
  for (const auto& p : profile) {
    Json r;
    r["n"] = p.n;
    r["norm"] = std::isfinite(p.norm) ? Json(p.norm) : Json(nullptr);
    if (p.exact) r["exact"] = p.exact->text();
    j["points"].push_back(std::move(r));
  }
  return j;
}

inline std::string decay_csv(const CriterionReport& rep) {
  std::ostringstream out;
  out << "k,n,quantity,value,exact\n";
  for (const auto& row : rep.decay) {
    out << row.k << ',' << row.n << ',' << row.quantity << ',' << detail::csv_value(row.value)
        << ',' << (row.value.is_exact() ? row.value.text() : "") << '\n';
  }
  return out.str();
}

inline std::string records_csv(const WitnessRun& run) {
  std::ostringstream out;
  out << "k,n,name,value,exact\n";
  for (const auto& rec : run.records) {
    for (const auto& [name, v] : rec.values) {
      out << rec.k << ',' << rec.n << ',' << name << ','
          << (std::isfinite(v) ? detail::format_double(v) : "") << ',';
      const auto it = rec.exact.find(name);
      if (it != rec.exact.end()) out << it->second;
      out << '\n';
    }
  }
  return out.str();
}

/// CSV rows (n, norm as decimal, norm as dyadic when exact).
inline std::string profile_csv(const std::vector<OrbitPoint>& profile) {
  std::ostringstream out;
  out << "n,norm,exact\n";
  for (const auto& p : profile) {
    std::string value = std::isfinite(p.norm) ? detail::format_double(p.norm) : "";
    if (p.exact) value = detail::csv_value(*p.exact);
    out << p.n << ',' << value << ',' << (p.exact ? p.exact->text() : "") << '\n';
  }
  return out.str();
}

namespace detail {

inline std::string render_rows(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size()) out << std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace detail

inline std::string render_table(const CriterionReport& rep) {
  std::vector<std::vector<std::string>> head;
  head.push_back({"criterion", rep.id});
  head.push_back({"family", rep.family});
  for (const auto& [key, value] : rep.parameters) head.push_back({key, value});
  head.push_back({"verdict", to_string(rep.verdict)});
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"k", "n", "quantity", "value", "exact"});
  for (const auto& row : rep.decay) {
    const double d = row.value.to_double_clamped();
    rows.push_back({std::to_string(row.k), std::to_string(row.n), row.quantity,
                    std::isfinite(d) ? detail::format_double(d) : "overflow",
                    row.value.is_exact() ? row.value.text() : ""});
  }
  return detail::render_rows(head) + "\n" + detail::render_rows(rows);
}

inline std::string render_table(const WitnessRun& run) {
  std::vector<std::vector<std::string>> head;
  head.push_back({"witness", run.kind});
  for (const auto& [key, value] : run.parameters) head.push_back({key, value});
  head.push_back({"verdict", to_string(run.verdict)});
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"k", "n", "name", "value"});
  for (const auto& rec : run.records) {
    for (const auto& [name, v] : rec.values) {
      rows.push_back({std::to_string(rec.k), std::to_string(rec.n), name,
                      std::isfinite(v) ? detail::format_double(v) : "overflow"});
    }
  }
  return detail::render_rows(head) + "\n" + detail::render_rows(rows);
}

}  // namespace elop

#endif  // ELOP_REPORT_HPP
