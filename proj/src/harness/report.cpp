// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

#include "divsum/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace divsum::harness {

namespace {

using Json = nlohmann::ordered_json;

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string optional(const std::optional<double>& v) { return v ? formatNumber(*v) : ""; }

std::string joinedFlags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) out += (out.empty() ? "" : ";") + f;
  return out;
}

void header(std::ostream& out, const std::string& hash) {
  out << "# divsum " << kVersion << " config=" << hash << "\n";
}

Json number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string formatNumber(double v) {
  if (!std::isfinite(v)) return "";
  if (v == 0) v = 0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string_view> csvColumns(bool withSplit) {
  std::vector<std::string_view> cols{"p",     "a",     "b",          "Px",      "Py",  "d",     "label",
                                     "ordP",  "R",     "twist",      "N",       "S_re", "S_im", "S_abs",
                                     "zero_count", "theorem", "rhs", "ratio", "flags", "ms"};
  if (withSplit) cols.insert(cols.end(), {"T1_re", "T1_im", "T2_re", "T2_im"});
  return cols;
}

void writeRowsCsv(std::ostream& out, const std::vector<ReportRow>& rows, const std::string& hash, bool withSplit) {
  header(out, hash);
  const auto cols = csvColumns(withSplit);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const ReportRow& r : rows) {
    out << r.p << ',' << r.a << ',' << r.b << ',' << r.px << ',' << r.py << ',' << r.d << ',' << r.label << ','
        << r.ordP << ',' << r.R << ',' << csvField(r.twist) << ',' << r.N << ',';
    if (r.S) {
      out << formatNumber(r.S->real()) << ',' << formatNumber(r.S->imag()) << ',' << formatNumber(std::abs(*r.S));
    } else {
      out << ",,";
    }
    out << ',' << (r.zeroCount ? std::to_string(*r.zeroCount) : "") << ',' << r.theorem << ',' << optional(r.rhs)
        << ',' << optional(r.ratio) << ',' << csvField(joinedFlags(r.flags)) << ',' << formatNumber(r.ms);
    if (withSplit) {
      for (const auto& t : {r.t1, r.t2}) {
        if (t) {
          out << ',' << formatNumber(t->real()) << ',' << formatNumber(t->imag());
        } else {
          out << ",,";
        }
      }
    }
    out << "\n";
  }
}

void writeRowsJson(std::ostream& out, const std::vector<ReportRow>& rows, const std::string& hash,
                   const std::vector<TheoremSummary>& summary) {
  Json doc;
  doc["version"] = kVersion;
  doc["config"] = hash;
  Json list = Json::array();
  for (const ReportRow& r : rows) {
    Json j;
    j["p"] = r.p;
    j["a"] = r.a;
    j["b"] = r.b;
    j["Px"] = r.px;
    j["Py"] = r.py;
    j["d"] = r.d;
    j["label"] = r.label;
    j["ordP"] = r.ordP;
    j["R"] = r.R;
    j["twist"] = r.twist;
    j["N"] = r.N;
    j["S_re"] = r.S ? Json(r.S->real()) : Json(nullptr);
    j["S_im"] = r.S ? Json(r.S->imag()) : Json(nullptr);
    j["S_abs"] = r.S ? Json(std::abs(*r.S)) : Json(nullptr);
    j["zero_count"] = r.zeroCount ? Json(*r.zeroCount) : Json(nullptr);
    j["theorem"] = r.theorem;
    j["rhs"] = number(r.rhs);
    j["ratio"] = number(r.ratio);
    j["flags"] = r.flags;
    j["ms"] = r.ms;
    if (r.t1) j["T1"] = {r.t1->real(), r.t1->imag()};
    if (r.t2) j["T2"] = {r.t2->real(), r.t2->imag()};
    list.push_back(std::move(j));
  }
  doc["rows"] = std::move(list);
  if (!summary.empty()) {
    Json s = Json::array();
    for (const auto& t : summary) {
      s.push_back({{"theorem", t.theorem},
                   {"rows", t.rows},
                   {"ratio_rows", t.ratioRows},
                   {"violated_rows", t.violatedRows},
                   {"error_rows", t.errorRows},
                   {"max_ratio", number(t.maxRatio)},
                   {"median_ratio", number(t.medianRatio)},
                   {"abs_within_N", t.absWithinN}});
    }
    doc["summary"] = std::move(s);
  }
  out << doc.dump(2) << "\n";
}

std::vector<TheoremSummary> summarize(const std::vector<ReportRow>& rows) {
  std::vector<TheoremSummary> out;
  std::vector<std::vector<double>> ratios;
  for (const ReportRow& r : rows) {
    if (r.theorem.empty()) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const TheoremSummary& t) { return t.theorem == r.theorem; });
    if (it == out.end()) {
      out.emplace_back().theorem = r.theorem;
      ratios.emplace_back();
      it = out.end() - 1;
    }
    auto& bucket = ratios[static_cast<std::size_t>(it - out.begin())];
    ++it->rows;
    if (!r.S) ++it->errorRows;
    if (std::any_of(r.flags.begin(), r.flags.end(),
                    [](const std::string& f) { return f.starts_with("HypothesisViolated:"); })) {
      ++it->violatedRows;
    }
    if (r.S && std::abs(*r.S) > static_cast<double>(r.N) * (1 + 1e-12)) it->absWithinN = false;
    if (r.ratio) {
      ++it->ratioRows;
      bucket.push_back(*r.ratio);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& v = ratios[i];
    if (v.empty()) continue;
    std::sort(v.begin(), v.end());
    out[i].maxRatio = v.back();
    const std::size_t mid = v.size() / 2;
    out[i].medianRatio = v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
  }
  return out;
}

void writeSummaryCsv(std::ostream& out, const std::vector<TheoremSummary>& summary, const std::string& hash) {
  header(out, hash);
  out << "theorem,rows,ratio_rows,violated_rows,error_rows,max_ratio,median_ratio,abs_within_N\n";
  for (const auto& t : summary) {
    out << t.theorem << ',' << t.rows << ',' << t.ratioRows << ',' << t.violatedRows << ',' << t.errorRows << ','
        << optional(t.maxRatio) << ',' << optional(t.medianRatio) << ',' << (t.absWithinN ? "true" : "false")
        << "\n";
  }
}

void writeSummaryJson(std::ostream& out, const std::vector<TheoremSummary>& summary, const std::string& hash) {
  writeRowsJson(out, {}, hash, summary);
}

void writeVerifyCsv(std::ostream& out, const VerifyReport& report, const std::string& hash) {
  header(out, hash);
  out << "check,context,passed,failed,detail\n";
  for (const auto& c : report.checks) {
    out << c.name << ',' << csvField(c.context) << ',' << c.passed << ',' << c.failed << ',' << csvField(c.detail)
        << "\n";
  }
}

void writeVerifyJson(std::ostream& out, const VerifyReport& report, const std::string& hash) {
  Json doc;
  doc["version"] = kVersion;
  doc["config"] = hash;
  doc["ok"] = report.ok();
  Json checks = Json::array();
  Json failures = Json::array();
  for (const auto& c : report.checks) {
    Json j{{"check", c.name}, {"context", c.context}, {"passed", c.passed}, {"failed", c.failed}};
    if (!c.ok()) {
      j["detail"] = c.detail;
      failures.push_back(j);
    }
    checks.push_back(std::move(j));
  }
  doc["failures"] = std::move(failures);
  doc["checks"] = std::move(checks);
  out << doc.dump(2) << "\n";
}

}  // namespace divsum::harness
