#pragma once

// Search for quasi-alternating certificates: a binary tree of resolutions in
// which determinants add up and every leaf simplifies to the unknot.

#include <chrono>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "glform/diagram.hpp"
#include "glform/exact_forms.hpp"
#include "json.hpp"

namespace glform {

struct QaBudget {
  long max_nodes = 1'000'000;
  double max_seconds = 60.0;
};

// `code` is the canonical code of the node's diagram after simplify();
// `crossing` indexes parse_pd(code). Leaves have no children and crossing -1.
struct CertNode {
  std::string code;
  Integer det;
  int crossing = -1;
  std::vector<CertNode> children;
};

struct QACertificate {
  std::string input_code;  // canonical code of the diagram handed to qa_certify
  CertNode root;
};

enum class QaStatus { certified, unknown };
const char* qa_status_name(QaStatus s);

struct QAVerdict {
  QaStatus status = QaStatus::unknown;
  std::optional<QACertificate> certificate;
  long nodes_explored = 0;
  bool budget_hit = false;
};

// Canonical code -> crossing chosen at that diagram. Safe for concurrent use.
class QaMemo {
 public:
  static constexpr const char* header = "glform-qa-memo 1";

  QaMemo() = default;
  // Lookups fall through to `base`, which is never written.
  explicit QaMemo(const QaMemo* base) : base_(base) {}

  std::optional<int> lookup(const std::string& code) const;
  void insert(const std::string& code, int crossing);
  std::size_t size() const;
  // True when neither this layer nor its base holds anything.
  bool empty() const;
  void clear();
  // Copies this layer's own entries into `target`.
  void merge_into(QaMemo& target) const;

  // A missing file is not an error. A file with another header, or with any
  // unreadable line, is ignored wholesale; the reason goes to `warning`.
  bool load(const std::filesystem::path& path, std::string* warning = nullptr);
  void save(const std::filesystem::path& path) const;

 private:
  const QaMemo* base_ = nullptr;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, int> entries_;
};

// Never throws for budget exhaustion; that is reported as budget_hit.
QAVerdict qa_certify(const Diagram& d, const QaBudget& budget = {}, QaMemo* memo = nullptr);

struct Validation {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Recomputes everything from the stored codes.
Validation validate_certificate(const QACertificate& cert);

struct QaConclusion {
  int b_plus_star = 0;
  int b_minus_star = 0;
  bool four_dim_alternating = true;
  std::string provenance = "Thm3-QA";
};

// Throws NotCertified, or MultiComponent when the certified diagram is a link.
QaConclusion qa_conclusions(const QAVerdict& v);

nlohmann::json to_json(const CertNode& node);
nlohmann::json to_json(const QACertificate& cert);
QACertificate certificate_from_json(const nlohmann::json& j);

}  // namespace glform
