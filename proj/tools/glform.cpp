#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glform/cli_io.hpp"

#ifndef GLFORM_DATA_DIR
#define GLFORM_DATA_DIR "data"
#endif

using namespace glform;
using nlohmann::json;

namespace {

enum Exit { ok = 0, io = 1, computation = 2, qa_unknown = 3, lookup = 4 };

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::io_error:
    case ErrorCode::missing_column:
    case ErrorCode::bad_row: return io;
    case ErrorCode::unknown_name: return lookup;
    default: return computation;
  }
}

struct Options {
  std::string pd;
  std::string name;
  std::vector<std::string> tables;
  std::string format = "json";
  long budget_nodes = QaBudget{}.max_nodes;
  double budget_seconds = QaBudget{}.max_seconds;
  std::string memo;
  std::string cert_out;
  bool qa_first = false;
  std::vector<std::string> extra_pd;
  int jobs = 1;
  std::string batch_command;
  int crossing = 0;
  std::string smoothing = "a";
  bool no_simplify = false;
};

std::vector<CensusTable> load_tables(const Options& o) {
  std::vector<std::string> paths = o.tables;
  if (paths.empty())
    for (const char* f : {"census_9.csv", "census_10.csv"}) paths.push_back(std::string(GLFORM_DATA_DIR) + "/" + f);
  std::vector<CensusTable> out;
  for (const auto& p : paths) out.push_back(load_census(p));
  return out;
}

KnotRecord input_record(const Options& o) {
  if (!o.pd.empty()) {
    KnotRecord rec;
    rec.name = o.name.empty() ? "input" : o.name;
    rec.pd = o.pd;
    parse_pd(rec.pd);
    return rec;
  }
  if (o.name.empty()) throw CLI::ValidationError("one of --pd or --name is required");
  return lookup_knot(load_tables(o), o.name);
}

void emit(const Options& o, const json& j) {
  if (o.format == "text") std::cout << json_to_text(j);
  else std::cout << j.dump(2) << '\n';
}

json prefixed(json head, const json& rest) {
  head.update(rest);
  return head;
}

QaBudget budget(const Options& o) { return {o.budget_nodes, o.budget_seconds}; }

std::unique_ptr<QaMemo> open_memo(const Options& o) {
  auto memo = std::make_unique<QaMemo>();
  if (o.memo.empty()) return memo;
  std::string warning;
  if (!memo->load(o.memo, &warning)) std::cerr << "warning: " << warning << '\n';
  return memo;
}

void close_memo(const Options& o, const QaMemo& memo) {
  if (!o.memo.empty()) memo.save(o.memo);
}

json bounds_for(const KnotRecord& rec, const Options& o, QaMemo* memo) {
  std::vector<Diagram> extra;
  for (const auto& pd : o.extra_pd) extra.push_back(parse_pd(pd));
  std::optional<QAVerdict> verdict;
  if (o.qa_first) verdict = qa_certify(parse_pd(rec.pd), budget(o), memo);
  json j = report_json(aggregate_report(rec, extra, verdict));
  if (verdict) j["qa"] = qa_status_name(verdict->status);
  return j;
}

int cmd_invariants(const Options& o) {
  const KnotRecord rec = input_record(o);
  emit(o, prefixed({{"name", rec.name}, {"pd", rec.pd}}, invariants_json(parse_pd(rec.pd))));
  return ok;
}

int cmd_qa(const Options& o) {
  const KnotRecord rec = input_record(o);
  auto memo = open_memo(o);
  const QAVerdict v = qa_certify(parse_pd(rec.pd), budget(o), memo.get());
  close_memo(o, *memo);
  json j = prefixed({{"name", rec.name}}, verdict_json(v));
  if (v.certificate && !o.cert_out.empty()) {
    std::ofstream out(o.cert_out);
    if (!out) throw Error(ErrorCode::io_error, "cannot write certificate to " + o.cert_out);
    out << to_json(*v.certificate).dump(2) << '\n';
  }
  if (v.certificate) {
    const QaConclusion c = qa_conclusions(v);
    if (parse_pd(rec.pd).is_knot())
      j["conclusions"] = {{"b_plus_star", c.b_plus_star},
                          {"b_minus_star", c.b_minus_star},
                          {"four_dim_alternating", c.four_dim_alternating},
                          {"provenance", c.provenance}};
  }
  emit(o, j);
  return v.status == QaStatus::certified ? ok : qa_unknown;
}

int cmd_bounds(const Options& o) {
  const KnotRecord rec = input_record(o);
  auto memo = open_memo(o);
  const json j = bounds_for(rec, o, memo.get());
  close_memo(o, *memo);
  emit(o, j);
  return ok;
}

int cmd_resolve(const Options& o) {
  const KnotRecord rec = input_record(o);
  const Diagram d = parse_pd(rec.pd);
  if (o.crossing < 0 || o.crossing >= d.crossing_count())
    throw Error(ErrorCode::malformed_code, "crossing " + std::to_string(o.crossing) + " out of range");
  const Smoothing s = (o.smoothing == "a" || o.smoothing == "0") ? Smoothing::a : Smoothing::b;
  Diagram r = resolve(d, o.crossing, s);
  if (!o.no_simplify) r = simplify(r);
  emit(o, {{"input", rec.pd},
           {"crossing", o.crossing},
           {"smoothing", s == Smoothing::a ? "a" : "b"},
           {"pd", to_pd(r)},
           {"canonical_code", canonical_code(r)},
           {"crossings", r.crossing_count()},
           {"components", r.component_count()},
           {"det", integer_to_json(link_determinant(r))}});
  return ok;
}

int cmd_batch(const Options& o) {
  std::vector<KnotRecord> rows;
  for (const auto& t : load_tables(o)) rows.insert(rows.end(), t.rows.begin(), t.rows.end());

  // Each row searches against a read-only snapshot, so output does not depend on scheduling.
  auto base = open_memo(o);
  std::vector<std::unique_ptr<QaMemo>> layers(rows.size());
  for (auto& l : layers) l = std::make_unique<QaMemo>(base.get());
  auto row_index = [&](const KnotRecord& rec) { return static_cast<std::size_t>(&rec - rows.data()); };

  auto task = [&](const KnotRecord& rec) -> std::string {
    QaMemo& memo = *layers[row_index(rec)];
    json j;
    if (o.batch_command == "invariants") {
      j = prefixed({{"name", rec.name}}, invariants_json(parse_pd(rec.pd)));
    } else if (o.batch_command == "qa") {
      QAVerdict v = qa_certify(parse_pd(rec.pd), budget(o), &memo);
      v.certificate.reset();
      j = prefixed({{"name", rec.name}}, verdict_json(v));
    } else {
      j = bounds_for(rec, o, &memo);
    }
    return j.dump();
  };
  const auto lines = run_batch(rows, task, o.jobs);
  for (const auto& l : layers) l->merge_into(*base);
  close_memo(o, *base);
  for (const auto& line : lines) std::cout << line << '\n';
  return ok;
}

int cmd_audit(const Options& o) {
  json report = json::array();
  int findings = 0;
  for (const auto& t : load_tables(o)) {
    json entry{{"table", t.source}, {"rows", t.rows.size()}, {"findings", json::array()}};
    for (const auto& f : audit_conventions(t)) {
      entry["findings"].push_back(
          {{"name", f.name}, {"column", f.column}, {"table", f.table_value}, {"computed", f.computed_value}});
      ++findings;
    }
    report.push_back(entry);
  }
  emit(o, {{"tables", report}, {"mismatches", findings}});
  return findings == 0 ? ok : computation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checkerboard-surface invariants, quasi-alternating certificates and 4-dimensional bounds for knots"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--pd", o.pd, "PD code, e.g. PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]");
    sub->add_option("--name", o.name, "knot name in the table; a trailing * selects the mirror");
  };
  auto add_table = [&](CLI::App* sub) {
    sub->add_option("--table", o.tables, "census CSV (repeatable); defaults to the bundled tables");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_qa = [&](CLI::App* sub) {
    sub->add_option("--budget-nodes", o.budget_nodes, "node limit for the certificate search");
    sub->add_option("--budget-seconds", o.budget_seconds, "wall-clock limit for the certificate search");
    sub->add_option("--memo", o.memo, "persistent memo file")->envname("GLFORM_MEMO");
  };

  auto* inv = app.add_subcommand("invariants", "signature, determinant and checkerboard forms");
  add_input(inv);
  add_table(inv);
  add_format(inv);

  auto* qa = app.add_subcommand("qa", "search for a quasi-alternating certificate");
  add_input(qa);
  add_table(qa);
  add_format(qa);
  add_qa(qa);
  qa->add_option("--cert-out", o.cert_out, "write the certificate JSON here");

  auto* bounds = app.add_subcommand("bounds", "aggregated interval bounds for one knot");
  add_input(bounds);
  add_table(bounds);
  add_format(bounds);
  add_qa(bounds);
  bounds->add_flag("--qa-first", o.qa_first, "run the certificate search before aggregating");
  bounds->add_option("--extra-pd", o.extra_pd, "further diagrams of the same knot (repeatable)");

  auto* batch = app.add_subcommand("batch", "run a command over every table row, one JSON line each");
  add_table(batch);
  add_qa(batch);
  batch->add_option("command", o.batch_command, "invariants, qa or bounds")
      ->required()
      ->check(CLI::IsMember({"invariants", "qa", "bounds"}));
  batch->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  batch->add_flag("--qa-first", o.qa_first, "for bounds: run the certificate search first");

  auto* res = app.add_subcommand("resolve", "smooth one crossing");
  add_input(res);
  add_table(res);
  add_format(res);
  res->add_option("--crossing", o.crossing, "crossing index (0-based)")->required();
  res->add_option("--smoothing", o.smoothing, "a or b")->check(CLI::IsMember({"a", "b", "0", "1"}));
  res->add_flag("--no-simplify", o.no_simplify, "skip Reidemeister I/II simplification");

  auto* audit = app.add_subcommand("audit-conventions", "compare computed sigma/det with the table columns");
  add_table(audit);
  add_format(audit);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*inv) return cmd_invariants(o);
    if (*qa) return cmd_qa(o);
    if (*bounds) return cmd_bounds(o);
    if (*batch) return cmd_batch(o);
    if (*res) return cmd_resolve(o);
    if (*audit) return cmd_audit(o);
  } catch (const Error& e) {
    std::cout << error_json(e).dump(2) << '\n';
    std::cerr << "glform: " << e.what() << '\n';
    return exit_for(e.code());
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "glform: " << e.what() << '\n';
    return computation;
  }
  return ok;
}
