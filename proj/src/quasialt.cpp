#include "glform/quasialt.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <unordered_set>

#include "glform/error.hpp"
#include "glform/gl_form.hpp"

namespace glform {

const char* qa_status_name(QaStatus s) { return s == QaStatus::certified ? "certified" : "unknown"; }

std::optional<int> QaMemo::lookup(const std::string& code) const {
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(code);
    if (it != entries_.end()) return it->second;
  }
  return base_ ? base_->lookup(code) : std::nullopt;
}

void QaMemo::insert(const std::string& code, int crossing) {
  std::unique_lock lock(mutex_);
  entries_[code] = crossing;
}

std::size_t QaMemo::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

bool QaMemo::empty() const { return size() == 0 && (!base_ || base_->empty()); }

void QaMemo::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

void QaMemo::merge_into(QaMemo& target) const {
  std::shared_lock lock(mutex_);
  for (const auto& [code, crossing] : entries_) target.insert(code, crossing);
}

bool QaMemo::load(const std::filesystem::path& path, std::string* warning) {
  auto warn = [&](const std::string& text) {
    if (warning) *warning = text;
    return false;
  };
  std::ifstream in(path);
  if (!in) return !std::filesystem::exists(path) || warn("cannot read memo file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != header) return warn("memo file " + path.string() + " has an unknown format; ignored");

  std::unordered_map<std::string, int> loaded;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    try {
      if (tab == std::string::npos) throw std::invalid_argument("no tab");
      std::size_t used = 0;
      const int crossing = std::stoi(line.substr(0, tab), &used);
      if (used != tab || crossing < 0) throw std::invalid_argument("bad crossing");
      const std::string code = line.substr(tab + 1);
      const Diagram d = parse_pd(code);
      if (crossing >= d.crossing_count()) throw std::invalid_argument("crossing out of range");
      loaded[code] = crossing;
    } catch (const std::exception&) {
      return warn("memo file " + path.string() + " is corrupt at line " + std::to_string(line_no) + "; ignored");
    }
  }
  std::unique_lock lock(mutex_);
  for (auto& [code, crossing] : loaded) entries_[code] = crossing;
  return true;
}

void QaMemo::save(const std::filesystem::path& path) const {
  std::vector<std::pair<std::string, int>> sorted;
  {
    std::shared_lock lock(mutex_);
    sorted.assign(entries_.begin(), entries_.end());
  }
  std::sort(sorted.begin(), sorted.end());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write memo file " + path.string());
    out << header << '\n';
    for (const auto& [code, crossing] : sorted) out << crossing << '\t' << code << '\n';
    if (!out) throw Error(ErrorCode::io_error, "cannot write memo file " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

enum class Outcome { ok, fail, budget };

class Search {
 public:
  Search(const QaBudget& budget, QaMemo& memo)
      : budget_(budget), memo_(memo), deadline_(std::chrono::steady_clock::now() +
                                                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                    std::chrono::duration<double>(budget.max_seconds))) {}

  Outcome run(const Diagram& raw) {
    if (++nodes_ > budget_.max_nodes || std::chrono::steady_clock::now() > deadline_) {
      budget_hit_ = true;
      return Outcome::budget;
    }
    const Diagram d = simplify(raw);
    if (d.crossing_count() == 0) return d.component_count() == 1 ? Outcome::ok : Outcome::fail;
    const std::string code = canonical_code(d);
    if (memo_.lookup(code)) return Outcome::ok;
    if (failed_.count(code)) return Outcome::fail;

    const Integer det = link_determinant(d);
    if (det <= 1) {
      failed_.insert(code);
      return Outcome::fail;
    }

    const Diagram canon = parse_pd(code);
    struct Candidate {
      int crossing;
      Integer smaller;
    };
    std::vector<Candidate> candidates;
    for (int k = 0; k < canon.crossing_count(); ++k) {
      const Integer d0 = link_determinant(resolve(canon, k, Smoothing::a));
      const Integer d1 = link_determinant(resolve(canon, k, Smoothing::b));
      if (d0 >= 1 && d1 >= 1 && d0 + d1 == det) candidates.push_back({k, std::min(d0, d1)});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& x, const Candidate& y) { return x.smaller > y.smaller; });

    for (const Candidate& c : candidates) {
      const Outcome first = run(resolve(canon, c.crossing, Smoothing::a));
      if (first == Outcome::budget) return first;
      if (first == Outcome::fail) continue;
      const Outcome second = run(resolve(canon, c.crossing, Smoothing::b));
      if (second == Outcome::budget) return second;
      if (second == Outcome::ok) {
        memo_.insert(code, c.crossing);
        return Outcome::ok;
      }
    }
    failed_.insert(code);
    return Outcome::fail;
  }

  long nodes() const { return nodes_; }
  bool budget_hit() const { return budget_hit_; }

 private:
  QaBudget budget_;
  QaMemo& memo_;
  std::chrono::steady_clock::time_point deadline_;
  std::unordered_set<std::string> failed_;
  long nodes_ = 0;
  bool budget_hit_ = false;
};

// Replays memo choices into an explicit tree; nullopt if the memo has a gap.
std::optional<CertNode> build(const Diagram& raw, const QaMemo& memo, int depth_left) {
  const Diagram d = simplify(raw);
  CertNode node;
  node.code = canonical_code(d);
  if (d.crossing_count() == 0) {
    node.det = 1;
    return node;
  }
  const auto choice = memo.lookup(node.code);
  if (!choice || depth_left == 0) return std::nullopt;
  const Diagram canon = parse_pd(node.code);
  if (*choice >= canon.crossing_count()) return std::nullopt;
  node.crossing = *choice;
  node.det = link_determinant(canon);
  for (Smoothing s : {Smoothing::a, Smoothing::b}) {
    auto child = build(resolve(canon, node.crossing, s), memo, depth_left - 1);
    if (!child) return std::nullopt;
    node.children.push_back(std::move(*child));
  }
  return node;
}

QAVerdict attempt(const Diagram& d, const QaBudget& budget, QaMemo& memo) {
  Search search(budget, memo);
  const Outcome outcome = search.run(d);
  QAVerdict v;
  v.nodes_explored = search.nodes();
  v.budget_hit = search.budget_hit();
  if (outcome != Outcome::ok) return v;
  auto root = build(d, memo, d.crossing_count() + 1);
  if (!root) return v;
  QACertificate cert{canonical_code(d), std::move(*root)};
  if (!validate_certificate(cert)) return v;
  v.status = QaStatus::certified;
  v.certificate = std::move(cert);
  return v;
}

Validation fail_at(const std::string& path, const std::string& why) { return {false, path + ": " + why}; }

Validation validate_node(const CertNode& node, const std::string& path) {
  Diagram d;
  try {
    d = parse_pd(node.code);
  } catch (const std::exception& e) {
    return fail_at(path, std::string("unparseable code: ") + e.what());
  }
  const Integer det = link_determinant(d);
  if (det != node.det) return fail_at(path, "stored det " + node.det.get_str() + " but computed " + det.get_str());

  if (node.children.empty()) {
    if (node.crossing != -1) return fail_at(path, "leaf names a crossing");
    const Diagram s = simplify(d);
    if (s.crossing_count() != 0 || s.component_count() != 1) return fail_at(path, "leaf does not simplify to the unknot");
    if (det != 1) return fail_at(path, "leaf determinant is not 1");
    return {};
  }
  if (node.children.size() != 2) return fail_at(path, "internal node needs exactly two children");
  if (node.crossing < 0 || node.crossing >= d.crossing_count()) return fail_at(path, "crossing index out of range");

  Integer sum = 0;
  for (int r = 0; r < 2; ++r) {
    const CertNode& child = node.children[r];
    const std::string child_path = path + "/" + std::to_string(r);
    const Diagram resolved = simplify(resolve(d, node.crossing, r == 0 ? Smoothing::a : Smoothing::b));
    if (canonical_code(resolved) != child.code) return fail_at(child_path, "code does not match the resolution");
    if (resolved.crossing_count() >= d.crossing_count()) return fail_at(child_path, "child is not smaller");
    const Integer child_det = link_determinant(resolved);
    if (child_det < 1) return fail_at(child_path, "determinant is not positive");
    sum += child_det;
    if (Validation v = validate_node(child, child_path); !v) return v;
  }
  if (sum != det) return fail_at(path, "determinants are not additive");
  return {};
}

}  // namespace

QAVerdict qa_certify(const Diagram& d, const QaBudget& budget, QaMemo* memo) {
  if (d.is_split()) return QAVerdict{QaStatus::unknown, std::nullopt, 1, false};
  QaMemo local;
  const bool seeded = memo && !memo->empty();
  QAVerdict v = attempt(d, budget, memo ? *memo : local);
  // A stale or inconsistent shared memo must not change the verdict.
  if (seeded && v.status == QaStatus::unknown && !v.budget_hit) {
    QAVerdict fresh = attempt(d, budget, local);
    fresh.nodes_explored += v.nodes_explored;
    v = std::move(fresh);
    if (v.status == QaStatus::certified) local.merge_into(*memo);
  }
  return v;
}

Validation validate_certificate(const QACertificate& cert) {
  try {
    const Diagram input = parse_pd(cert.input_code);
    if (input.is_split()) return fail_at("input", "split diagram");
    if (canonical_code(simplify(input)) != cert.root.code) return fail_at("input", "root is not the simplified input");
    return validate_node(cert.root, "root");
  } catch (const std::exception& e) {
    return fail_at("input", e.what());
  }
}

QaConclusion qa_conclusions(const QAVerdict& v) {
  if (v.status != QaStatus::certified || !v.certificate || !validate_certificate(*v.certificate))
    throw Error(ErrorCode::not_certified, "no validated certificate");
  if (!parse_pd(v.certificate->input_code).is_knot())
    throw Error(ErrorCode::multi_component, "certificate is for a link, not a knot");
  return {};
}

namespace {

nlohmann::json integer_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  return Integer(j.get<std::string>());
}

CertNode node_from_json(const nlohmann::json& j) {
  CertNode node;
  node.code = j.at("code").get<std::string>();
  node.det = integer_from_json(j.at("det"));
  node.crossing = j.value("crossing", -1);
  if (j.contains("children"))
    for (const auto& c : j.at("children")) node.children.push_back(node_from_json(c));
  return node;
}

}  // namespace

nlohmann::json to_json(const CertNode& node) {
  nlohmann::json j{{"code", node.code}, {"det", integer_json(node.det)}};
  if (node.children.empty()) return j;
  j["crossing"] = node.crossing;
  j["children"] = nlohmann::json::array();
  for (const auto& c : node.children) j["children"].push_back(to_json(c));
  return j;
}

nlohmann::json to_json(const QACertificate& cert) {
  return {{"format", "glform-qa-certificate"}, {"version", 1}, {"input", cert.input_code}, {"root", to_json(cert.root)}};
}

QACertificate certificate_from_json(const nlohmann::json& j) {
  try {
    return {j.at("input").get<std::string>(), node_from_json(j.at("root"))};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::malformed_code, std::string("certificate JSON: ") + e.what());
  }
}

}  // namespace glform
