#include "glform/cli_io.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "glform/gl_form.hpp"

namespace glform {

namespace {

// One CSV record; quoted fields may contain commas and doubled quotes.
bool read_record(std::istream& in, std::vector<std::string>& fields, int& line_no) {
  fields.clear();
  std::string line;
  if (!std::getline(in, line)) return false;
  ++line_no;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0;; ++i) {
    if (i == line.size()) {
      if (!quoted) break;
      // A quoted field spanning lines.
      std::string more;
      if (!std::getline(in, more)) throw Error(ErrorCode::bad_row, "unterminated quote at line " + std::to_string(line_no));
      ++line_no;
      field += '\n';
      line += '\n' + more;
      continue;
    }
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return true;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

std::optional<long> parse_long(const std::string& text) {
  long value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<bool> parse_bool(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
  if (text == "1" || text == "true" || text == "yes" || text == "y") return true;
  if (text == "0" || text == "false" || text == "no" || text == "n") return false;
  return std::nullopt;
}

using LongField = std::optional<long> KnotRecord::*;
using BoolField = std::optional<bool> KnotRecord::*;

const std::map<std::string, LongField>& long_columns() {
  static const std::map<std::string, LongField> columns{
      {"sigma", &KnotRecord::sigma}, {"det", &KnotRecord::det},       {"v0", &KnotRecord::v0},
      {"v0_mirror", &KnotRecord::v0_mirror}, {"tau", &KnotRecord::tau}, {"g3", &KnotRecord::g3},
      {"g4", &KnotRecord::g4},       {"gamma3", &KnotRecord::gamma3}, {"gamma4", &KnotRecord::gamma4},
      {"alt", &KnotRecord::alt},     {"dalt", &KnotRecord::dalt},
  };
  return columns;
}

const std::map<std::string, BoolField>& bool_columns() {
  static const std::map<std::string, BoolField> columns{
      {"slice", &KnotRecord::slice},
      {"qa", &KnotRecord::qa},
      {"alternating", &KnotRecord::alternating},
      {"no_posdef_filling", &KnotRecord::no_posdef_filling},
  };
  return columns;
}

}  // namespace

const KnotRecord* CensusTable::find(const std::string& name) const {
  for (const auto& r : rows)
    if (r.name == name) return &r;
  return nullptr;
}

CensusTable parse_census(std::istream& in, const std::string& source) {
  CensusTable table;
  table.source = source;
  std::vector<std::string> header;
  int line_no = 0;
  if (!read_record(in, header, line_no)) throw Error(ErrorCode::missing_column, source + ": empty file, no header");
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < header.size(); ++k) {
    const std::string col = trim(header[k]);
    if (index.count(col)) throw Error(ErrorCode::bad_row, source + ": duplicate column '" + col + "' in header");
    index[col] = k;
    table.columns.insert(col);
  }
  for (const char* required : {"name", "pd"})
    if (!index.count(required)) throw Error(ErrorCode::missing_column, source + ": required column '" + required + "' missing");

  std::vector<std::string> fields;
  std::set<std::string> seen;
  int row = 0;
  while (true) {
    const int start_line = line_no + 1;
    if (!read_record(in, fields, line_no)) break;
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    ++row;
    auto bad = [&](const std::string& why) {
      return Error(ErrorCode::bad_row,
                   source + ": row " + std::to_string(row) + " (line " + std::to_string(start_line) + "): " + why);
    };
    if (fields.size() != header.size())
      throw bad("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()));
    auto cell = [&](const std::string& col) { return trim(fields[index.at(col)]); };

    KnotRecord rec;
    rec.name = cell("name");
    rec.pd = cell("pd");
    if (rec.name.empty()) throw bad("empty name");
    if (!seen.insert(rec.name).second) throw bad("duplicate name '" + rec.name + "'");
    try {
      parse_pd(rec.pd);
    } catch (const Error& e) {
      throw bad(std::string("unparseable pd: ") + e.what());
    }
    for (const auto& [col, field] : long_columns()) {
      if (!index.count(col) || cell(col).empty()) continue;
      const auto value = parse_long(cell(col));
      if (!value) throw bad("column '" + col + "' is not an integer: '" + cell(col) + "'");
      rec.*field = value;
    }
    for (const auto& [col, field] : bool_columns()) {
      if (!index.count(col) || cell(col).empty()) continue;
      const auto value = parse_bool(cell(col));
      if (!value) throw bad("column '" + col + "' is not a flag: '" + cell(col) + "'");
      rec.*field = value;
    }
    table.rows.push_back(std::move(rec));
  }
  return table;
}

CensusTable load_census(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open table " + path.string());
  return parse_census(in, path.string());
}

KnotRecord lookup_knot(const std::vector<CensusTable>& tables, const std::string& name) {
  for (const auto& t : tables)
    if (const KnotRecord* r = t.find(name)) return *r;
  if (name.size() > 1 && name.back() == '*') {
    const std::string base = name.substr(0, name.size() - 1);
    for (const auto& t : tables)
      if (const KnotRecord* r = t.find(base)) return mirror_record(*r);
  }
  throw Error(ErrorCode::unknown_name, "no table row named '" + name + "'");
}

nlohmann::json integer_to_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

nlohmann::json invariants_json(const Diagram& d) {
  nlohmann::json j;
  j["crossings"] = d.crossing_count();
  j["components"] = d.component_count();
  j["writhe"] = writhe(d);
  j["sigma"] = d.is_knot() && !d.is_split() ? nlohmann::json(knot_signature(d)) : nlohmann::json(nullptr);
  j["det"] = integer_to_json(link_determinant(d));
  j["h1_factors"] = nlohmann::json::array();
  for (const auto& f : h1_factors(d)) j["h1_factors"].push_back(integer_to_json(f));
  j["alternating"] = is_alternating(d);
  j["dealternating_distance"] = dealternating_distance(d).distance;

  j["colorings"] = nlohmann::json::array();
  if (d.is_split()) return j;
  const FaceStructure fs = faces(d);
  const auto [first, second] = checkerboard(d, fs);
  for (const Coloring* c : {&first, &second}) {
    const GoeritzData g = goeritz_matrix(d, fs, *c);
    const CoverBetti b = cover_betti(g);
    nlohmann::json m = nlohmann::json::array();
    for (int r = 0; r < g.matrix.size(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int col = 0; col < g.matrix.size(); ++col) row.push_back(integer_to_json(g.matrix(r, col)));
      m.push_back(row);
    }
    j["colorings"].push_back({{"shaded_regions", c->count(c->shaded)},
                              {"b1", g.b1_surface},
                              {"mu", g.mu},
                              {"euler", g.euler_number},
                              {"b2_plus", b.b2_plus},
                              {"b2_minus", b.b2_minus},
                              {"nullity", b.nullity},
                              {"definiteness", definiteness_name(definiteness(g.signature))},
                              {"goeritz", m}});
  }
  return j;
}

nlohmann::json verdict_json(const QAVerdict& v) {
  nlohmann::json j{{"status", qa_status_name(v.status)},
                   {"nodes_explored", v.nodes_explored},
                   {"budget_hit", v.budget_hit}};
  if (v.certificate) j["certificate"] = to_json(*v.certificate);
  return j;
}

nlohmann::json interval_json(const Interval& iv) {
  std::vector<std::string> all = iv.lower_provenance;
  all.insert(all.end(), iv.upper_provenance.begin(), iv.upper_provenance.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return {{"lower", iv.lower},
          {"upper", iv.upper ? nlohmann::json(*iv.upper) : nlohmann::json(nullptr)},
          {"lower_provenance", iv.lower_provenance},
          {"upper_provenance", iv.upper_provenance},
          {"provenance", all}};
}

nlohmann::json report_json(const BoundsReport& r) {
  return {{"name", r.name},
          {"sigma", r.sigma},
          {"det", integer_to_json(r.det)},
          {"b_plus", interval_json(r.b_plus)},
          {"b_minus", interval_json(r.b_minus)},
          {"b_plus_star", interval_json(r.b_plus_star)},
          {"b_minus_star", interval_json(r.b_minus_star)},
          {"gamma3", interval_json(r.gamma3)},
          {"gamma4", interval_json(r.gamma4)},
          {"dalt", interval_json(r.dalt)},
          {"alt", interval_json(r.alt)},
          {"four_dim_alternating", four_dim_name(r.four_dim_alternating)},
          {"reason", r.reason},
          {"notes", r.notes},
          {"contradictions", r.contradictions}};
}

nlohmann::json error_json(const Error& e) {
  return {{"error", {{"code", std::string(error_name(e.code()))}, {"message", e.what()}}}};
}

namespace {

void flatten(const nlohmann::json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "[" + std::to_string(k) + "]", out);
  } else {
    out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

}  // namespace

std::string json_to_text(const nlohmann::json& j) {
  std::ostringstream out;
  flatten(j, "", out);
  return out.str();
}

std::vector<ConventionFinding> audit_conventions(const CensusTable& table) {
  std::vector<ConventionFinding> findings;
  for (const auto& rec : table.rows) {
    const Diagram d = parse_pd(rec.pd);
    if (rec.sigma && d.is_knot()) {
      const int s = knot_signature(d);
      if (s != *rec.sigma) findings.push_back({rec.name, "sigma", std::to_string(*rec.sigma), std::to_string(s)});
    }
    if (rec.det) {
      const Integer det = link_determinant(d);
      if (det != *rec.det) findings.push_back({rec.name, "det", std::to_string(*rec.det), det.get_str()});
    }
  }
  return findings;
}

std::vector<std::string> run_batch(const std::vector<KnotRecord>& rows,
                                   const std::function<std::string(const KnotRecord&)>& task, int jobs) {
  std::vector<std::string> out(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < rows.size();) {
      try {
        out[k] = task(rows[k]);
      } catch (const Error& e) {
        nlohmann::json j = error_json(e);
        j["name"] = rows[k].name;
        out[k] = j.dump();
      } catch (const std::exception& e) {
        out[k] = nlohmann::json{{"name", rows[k].name}, {"error", {{"code", "Internal"}, {"message", e.what()}}}}.dump();
      }
    }
  };
  const int workers = std::clamp<int>(jobs, 1, std::max<int>(1, static_cast<int>(rows.size())));
  std::vector<std::jthread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();  // join before `out` is handed back
  return out;
}

}  // namespace glform
