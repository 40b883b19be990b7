// Command-line front end: evaluates measures, classifies the catalog and runs the
// clustering experiments. Every subcommand that writes files also writes a JSON manifest.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rca/calculus.hpp"
#include "rca/classic.hpp"
#include "rca/classifier.hpp"
#include "rca/csv.hpp"
#include "rca/measure.hpp"
#include "rca/miner.hpp"
#include "rca/pipeline.hpp"
#include "rca/rank.hpp"
#include "rca/synth.hpp"

#ifndef RCA_VERSION
#define RCA_VERSION "dev"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using namespace rca;

// Collects the files of one run and writes them together with the manifest.
class Run {
 public:
  Run(std::string subcommand, json config)
      : subcommand_(std::move(subcommand)), config_(std::move(config)) {}

  void add(const fs::path& path, std::string content) {
    files_.emplace_back(path, std::move(content));
  }

  // Writes every file atomically, then `manifest` (or <first file>.manifest.json).
  void commit(const fs::path& manifest = {}) const {
    if (files_.empty()) return;
    json outputs = json::array();
    for (const auto& [path, content] : files_) {
      write_file_atomic(path, content);
      outputs.push_back({{"file", path.filename().string()},
                         {"bytes", content.size()},
                         {"fnv1a", content_hash(content)}});
    }
    json m = {{"tool", "rca"},
              {"tool_version", RCA_VERSION},
              {"subcommand", subcommand_},
              {"config", config_},
              {"catalog_version", Catalog::builtin().version()},
              {"outputs", outputs}};
    fs::path where = manifest;
    if (where.empty()) {
      where = files_.front().first;
      where += ".manifest.json";
    }
    write_file_atomic(where, m.dump(2) + "\n");
  }

 private:
  std::string subcommand_;
  json config_;
  std::vector<std::pair<fs::path, std::string>> files_;
};

// Sends `content` to `out` when given, else to stdout.
void emit(const std::string& subcommand, const json& config, const std::string& out,
          std::string content) {
  if (out.empty()) {
    std::cout << content;
    return;
  }
  Run run(subcommand, config);
  run.add(out, std::move(content));
  run.commit();
}

ProbeGrid load_grid(const std::string& path) {
  return path.empty() ? ProbeGrid{} : probe_grid_from_json(read_file(path));
}

// "published" selects the shipped reference labels.
std::vector<ExpectedRow> load_labels(const std::string& source) {
  if (source == "published") return published_labels();
  std::ifstream in(source);
  if (!in) throw std::runtime_error("cannot open '" + source + "'");
  try {
    return read_classification_csv(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(source + ": " + e.what());
  }
}

std::string slurp_table(const std::vector<ContingencyTable>& tables) {
  std::ostringstream os;
  write_tables_csv(os, tables);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-of-change analysis of association rule interestingness measures"};
  app.set_version_flag("--version", std::string(RCA_VERSION));
  app.require_subcommand(1);

  // list-measures
  auto* list = app.add_subcommand("list-measures", "List the catalog measures");
  bool list_defs = false;
  list->add_flag("--definitions", list_defs, "Also print each measure's DSL body");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a measure on one table");
  std::string eval_measure, eval_table;
  eval->add_option("--measure", eval_measure, "Measure id, or 'all'")->required();
  eval->add_option("--table", eval_table, "f11,f10,f01,f00")->required();

  // derive
  auto* derive = app.add_subcommand("derive", "Print a partial derivative");
  std::string der_measure, der_cell, der_at;
  derive->add_option("--measure", der_measure, "Measure id")->required();
  derive->add_option("--cell", der_cell, "f11, f10, f01 or f00")->required();
  derive->add_option("--at", der_at, "Evaluate at f11,f10,f01,f00");

  // classify
  auto* classify = app.add_subcommand("classify", "Classify every measure under UNAI/UNZR");
  std::string cls_out, cls_grid, cls_evidence, cls_compare, cls_mismatch;
  bool cls_serial = false;
  classify->add_option("--out", cls_out, "Classification CSV (stdout when omitted)");
  classify->add_option("--grid", cls_grid, "Probe grid JSON override");
  classify->add_option("--evidence-dir", cls_evidence, "Write per-measure evidence CSVs here");
  classify->add_option("--compare", cls_compare,
                       "Reference classification CSV, or 'published'");
  classify->add_option("--mismatch-out", cls_mismatch, "Mismatch report CSV (with --compare)");
  classify->add_flag("--serial", cls_serial, "Use the serial reference path");

  // crosstab
  auto* xtab = app.add_subcommand("crosstab", "Classic properties against UNAI/UNZR");
  std::string xt_labels, xt_out, xt_classic_out, xt_grid;
  std::uint64_t xt_seed = 42;
  double xt_tol = 1e-9;
  xtab->add_option("--labels", xt_labels,
                   "Classification CSV or 'published' (computed when omitted)");
  xtab->add_option("--out", xt_out, "Cross-tab CSV (stdout when omitted)");
  xtab->add_option("--classic-out", xt_classic_out, "Per-measure property verdict CSV");
  xtab->add_option("--grid", xt_grid, "Probe grid JSON override");
  xtab->add_option("--seed", xt_seed, "Seed for scale-factor sampling");
  xtab->add_option("--tolerance", xt_tol, "Relative tolerance of equality checks");

  // synth
  auto* synth = app.add_subcommand("synth", "Emit a synthetic table grid");
  std::string syn_preset, syn_out;
  synth->add_option("--preset", syn_preset, "sparse or dense")
      ->required()
      ->check(CLI::IsMember({"sparse", "dense"}));
  synth->add_option("--out", syn_out, "Tables CSV (stdout when omitted)");

  // mine
  auto* mine = app.add_subcommand("mine", "Mine one-to-one rules from binarized transactions");
  std::string mine_in, mine_out, mine_filter = "none";
  double mine_support = 0.0;
  bool mine_allow_zero = false, mine_serial = false;
  mine->add_option("--input", mine_in, "Transaction CSV (header + 0/1 rows)")->required();
  mine->add_option("--out", mine_out, "Rules CSV (stdout when omitted)");
  mine->add_option("--min-support", mine_support, "Keep rules with f11/N above this");
  mine->add_flag("--allow-zero-f11", mine_allow_zero, "Keep rules with f11 = 0");
  mine->add_option("--filter", mine_filter, "none, sparse (f11<f00) or dense (f11>f00)")
      ->check(CLI::IsMember({"none", "sparse", "dense"}));
  mine->add_flag("--serial", mine_serial, "Use the serial reference counter");

  // rank
  auto* rank = app.add_subcommand("rank", "Spearman correlation of measure rankings");
  std::string rank_rules_path, rank_out;
  std::size_t rank_overlap = 3;
  bool rank_serial = false;
  rank->add_option("--rules", rank_rules_path, "Rules CSV")->required();
  rank->add_option("--out", rank_out, "Correlation matrix CSV (stdout when omitted)");
  rank->add_option("--min-overlap", rank_overlap, "Minimum shared defined rules per pair");
  rank->add_flag("--serial", rank_serial, "Use the serial reference path");

  // cluster
  auto* clus = app.add_subcommand("cluster", "Threshold a correlation matrix into clusters");
  std::string cl_matrix, cl_out, cl_labels, cl_column = "UNZR_f11", cl_xt_out, cl_reference;
  double cl_threshold = 0.8;
  clus->add_option("--matrix", cl_matrix, "Correlation matrix CSV")->required();
  clus->add_option("--threshold", cl_threshold, "Edge threshold on rho");
  clus->add_option("--out", cl_out, "Cluster listing (stdout when omitted)");
  clus->add_option("--labels", cl_labels, "Classification CSV or 'published'");
  clus->add_option("--column", cl_column, "Label column for the cross-tab");
  clus->add_option("--crosstab-out", cl_xt_out, "Cluster x label CSV (needs --labels)");
  clus->add_option("--reference", cl_reference, "Published partition to compare against");

  // curve
  auto* curve = app.add_subcommand("curve", "Measure values while one cell varies");
  std::string cv_measure, cv_vary, cv_fixed, cv_range = "1:100000", cv_out, cv_scale = "log";
  int cv_points = 101;
  curve->add_option("--measure", cv_measure, "Measure id")->required();
  curve->add_option("--vary", cv_vary, "Cell to vary")->required();
  curve->add_option("--fixed", cv_fixed, "The other three cells in f11,f10,f01,f00 order")
      ->required();
  curve->add_option("--range", cv_range, "lo:hi");
  curve->add_option("--points", cv_points, "Number of samples")->check(CLI::Range(2, 1000000));
  curve->add_option("--scale", cv_scale, "log or linear spacing")
      ->check(CLI::IsMember({"log", "linear"}));
  curve->add_option("--out", cv_out, "Curve CSV (stdout when omitted)");

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "Run a clustering experiment end to end");
  std::string rp_kind, rp_dir, rp_tx, rp_labels, rp_reference, rp_grid;
  double rp_threshold = 0.8, rp_support = 0.0;
  bool rp_serial = false;
  repro->add_option("kind", rp_kind, "sparse or dense")
      ->required()
      ->check(CLI::IsMember({"sparse", "dense"}));
  repro->add_option("--out-dir", rp_dir, "Output directory")->required();
  repro->add_option("--threshold", rp_threshold, "Edge threshold on rho");
  repro->add_option("--transactions", rp_tx,
                    "Mine this binarized CSV instead of the synthetic grid");
  repro->add_option("--min-support", rp_support, "Support filter when mining");
  repro->add_option("--labels", rp_labels,
                    "Classification CSV or 'published' (computed when omitted)");
  repro->add_option("--reference", rp_reference,
                    "Published partition (default: <kind>-synthetic for grid runs)");
  repro->add_option("--grid", rp_grid, "Probe grid JSON override");
  repro->add_flag("--serial", rp_serial, "Use the serial reference paths");

  CLI11_PARSE(app, argc, argv);

  try {
    const Catalog& catalog = Catalog::builtin();

    if (*list) {
      for (const auto& m : catalog.measures()) {
        std::cout << m.id() << '\t' << m.display_name();
        if (list_defs) std::cout << '\t' << m.definition();
        std::cout << '\n';
      }
    } else if (*eval) {
      const ContingencyTable t = parse_table(eval_table);
      if (eval_measure == "all") {
        for (const auto& m : catalog.measures()) {
          std::cout << m.id() << ',' << format_number(m.evaluate(t)) << '\n';
        }
      } else {
        std::cout << format_number(catalog.at(eval_measure).evaluate(t)) << '\n';
      }
    } else if (*derive) {
      const Measure& m = catalog.at(der_measure);
      const Cell cell = parse_cell(der_cell);
      const PartialDerivative d(m, cell);
      if (d.expr()) {
        std::cout << "d/d" << cell_name(cell) << " = " << d.expr()->to_string() << '\n';
      } else {
        std::cout << "d/d" << cell_name(cell)
                  << " has no symbolic form; values use a high-precision finite difference\n";
      }
      if (!der_at.empty()) {
        const ContingencyTable t = parse_table(der_at);
        const auto s = d.at(t.counts(), t[cell]);
        std::cout << "value " << format_number(to_double(s.derivative)) << " ("
                  << stencil_name(s.stencil) << ")\n";
        std::cout << "central-difference "
                  << format_number(numeric_derivative(m, {cell, t.counts(), t[cell]})) << '\n';
      }
    } else if (*classify) {
      const ProbeGrid grid = load_grid(cls_grid);
      const auto rows = classify_catalog(catalog, grid,
                                         cls_serial ? Execution::serial : Execution::parallel);
      std::ostringstream table;
      write_classification_csv(table, rows);
      const json config = {{"grid", cls_grid}, {"serial", cls_serial}, {"compare", cls_compare}};
      Run run("classify", config);
      if (cls_out.empty()) {
        std::cout << table.str();
      } else {
        run.add(cls_out, table.str());
      }
      if (!cls_evidence.empty()) {
        for (const auto& row : rows) {
          std::ostringstream ev;
          write_evidence_csv(ev, row);
          run.add(fs::path(cls_evidence) / (row.measure + ".csv"), ev.str());
        }
      }
      if (!cls_compare.empty()) {
        const auto mismatches = compare_labels(rows, load_labels(cls_compare));
        std::size_t rows_ok = 0;
        for (const auto& row : rows) {
          bool ok = true;
          for (const auto& mm : mismatches) ok = ok && mm.measure != row.measure;
          rows_ok += ok;
        }
        std::cerr << "cells matching: " << rows.size() * 10 - mismatches.size() << "/"
                  << rows.size() * 10 << ", rows matching: " << rows_ok << "/" << rows.size()
                  << '\n';
        std::ostringstream mm;
        write_mismatch_csv(mm, mismatches, catalog);
        if (cls_mismatch.empty()) {
          std::cerr << mm.str();
        } else {
          run.add(cls_mismatch, mm.str());
        }
      }
      run.commit(cls_out.empty() && !cls_evidence.empty() ? fs::path(cls_evidence) / "manifest.json"
                                                         : fs::path{});
    } else if (*xtab) {
      ClassicConfig cfg = ClassicConfig::builtin();
      cfg.seed = xt_seed;
      cfg.relative_tolerance = xt_tol;
      const auto classic = check_catalog(catalog, cfg);
      std::vector<RcaClassification> rca;
      if (xt_labels.empty()) {
        rca = classify_catalog(catalog, load_grid(xt_grid));
      } else {
        // Only the overall labels enter the cross-tab.
        for (const auto& row : load_labels(xt_labels)) {
          RcaClassification r;
          r.measure = row.measure;
          r.overall_unai = row.labels[4];
          r.overall_unzr = row.labels[9];
          rca.push_back(std::move(r));
        }
      }
      std::ostringstream ct, cl;
      write_crosstab_csv(ct, classic, rca);
      write_classic_csv(cl, classic);
      const json config = {{"labels", xt_labels}, {"seed", xt_seed}, {"tolerance", xt_tol}};
      Run run("crosstab", config);
      if (xt_out.empty()) {
        std::cout << ct.str();
      } else {
        run.add(xt_out, ct.str());
      }
      if (!xt_classic_out.empty()) run.add(xt_classic_out, cl.str());
      run.commit();
    } else if (*synth) {
      emit("synth", {{"preset", syn_preset}}, syn_out,
           slurp_table(generate(GridPreset::named(syn_preset))));
    } else if (*mine) {
      MineOptions opts;
      opts.min_support = mine_support;
      opts.require_cooccurrence = !mine_allow_zero;
      auto rules = mine_rules(load_transactions(mine_in), opts,
                              mine_serial ? Execution::serial : Execution::parallel);
      if (mine_filter == "sparse") rules = filter_sparse(rules);
      if (mine_filter == "dense") rules = filter_dense(rules);
      std::cerr << rules.size() << " rules\n";
      std::ostringstream os;
      write_rules_csv(os, rules);
      emit("mine",
           {{"input", mine_in},
            {"min_support", mine_support},
            {"allow_zero_f11", mine_allow_zero},
            {"filter", mine_filter}},
           mine_out, os.str());
    } else if (*rank) {
      std::ifstream in(rank_rules_path);
      if (!in) throw std::runtime_error("cannot open '" + rank_rules_path + "'");
      std::vector<ContingencyTable> tables;
      for (const auto& r : read_rules_csv(in)) tables.push_back(r.table);
      const Execution exec = rank_serial ? Execution::serial : Execution::parallel;
      const RankMatrix rm = rank_rules(tables, catalog, exec);
      for (const auto& id : rm.fully_masked()) {
        std::cerr << "warning: " << id << " is undefined on every rule\n";
      }
      std::ostringstream os;
      write_correlation_csv(os, spearman_matrix(rm, exec, rank_overlap));
      emit("rank", {{"rules", rank_rules_path}, {"min_overlap", rank_overlap}}, rank_out,
           os.str());
    } else if (*clus) {
      std::ifstream in(cl_matrix);
      if (!in) throw std::runtime_error("cannot open '" + cl_matrix + "'");
      const ClusterAssignment ca = cluster(read_correlation_csv(in), cl_threshold);
      std::ostringstream os;
      write_clusters(os, ca);
      const json config = {{"matrix", cl_matrix},
                           {"threshold", cl_threshold},
                           {"labels", cl_labels},
                           {"column", cl_column},
                           {"reference", cl_reference}};
      Run run("cluster", config);
      if (cl_out.empty()) {
        std::cout << os.str();
      } else {
        run.add(cl_out, os.str());
      }
      if (!cl_labels.empty()) {
        const auto ct = property_crosstab(ca, label_column(load_labels(cl_labels), cl_column),
                                          cl_column);
        std::ostringstream xs;
        write_cluster_crosstab_csv(xs, ct);
        if (cl_xt_out.empty()) {
          std::cout << xs.str();
        } else {
          run.add(cl_xt_out, xs.str());
        }
      }
      if (!cl_reference.empty()) {
        const auto& ref = published_partitions().at(cl_reference);
        std::cerr << "rand-index " << format_number(rand_index(ca, ref))
                  << " adjusted-rand-index " << format_number(adjusted_rand_index(ca, ref))
                  << '\n';
      }
      run.commit();
    } else if (*curve) {
      const Measure& m = catalog.at(cv_measure);
      const Cell cell = parse_cell(cv_vary);
      const auto fixed = split_fields(cv_fixed, ',');
      if (fixed.size() != 3) throw std::invalid_argument("--fixed needs three counts");
      const auto colon = cv_range.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("--range must be lo:hi");
      const double lo = parse_number(cv_range.substr(0, colon));
      const double hi = parse_number(cv_range.substr(colon + 1));
      if (!(lo >= 0 && hi > lo)) throw std::invalid_argument("--range needs 0 <= lo < hi");
      if (cv_scale == "log" && lo <= 0) {
        throw std::invalid_argument("log spacing needs lo > 0");
      }
      Counts<double> counts{};
      std::size_t k = 0;
      for (Cell c : kAllCells) {
        if (c != cell) counts[static_cast<std::size_t>(c)] = parse_number(fixed[k++]);
      }
      std::ostringstream os;
      os << cell_name(cell) << ',' << m.id() << '\n';
      for (int i = 0; i < cv_points; ++i) {
        const double f = static_cast<double>(i) / (cv_points - 1);
        double x = cv_scale == "log" ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
        if (i == cv_points - 1) x = hi;
        counts[static_cast<std::size_t>(cell)] = x;
        os << format_number(x) << ',' << format_number(m.evaluate(counts)) << '\n';
      }
      emit("curve",
           {{"measure", cv_measure},
            {"vary", cv_vary},
            {"fixed", cv_fixed},
            {"range", cv_range},
            {"points", cv_points},
            {"scale", cv_scale}},
           cv_out, os.str());
    } else if (*repro) {
      ExperimentConfig cfg;
      cfg.preset = rp_kind;
      cfg.threshold = rp_threshold;
      cfg.mine.min_support = rp_support;
      if (!rp_tx.empty()) cfg.transactions = rp_tx;
      if (!rp_labels.empty()) cfg.labels = load_labels(rp_labels);
      cfg.grid = load_grid(rp_grid);
      cfg.exec = rp_serial ? Execution::serial : Execution::parallel;
      cfg.reference = rp_reference;
      if (cfg.reference.empty() && rp_tx.empty()) cfg.reference = rp_kind + "-synthetic";
      const ExperimentResult result = run_experiment(cfg);
      const json config = {{"kind", rp_kind},
                           {"threshold", rp_threshold},
                           {"transactions", rp_tx},
                           {"min_support", rp_support},
                           {"labels", rp_labels},
                           {"reference", cfg.reference},
                           {"grid", rp_grid}};
      Run run("reproduce", config);
      for (auto& [name, content] : experiment_outputs(result)) {
        run.add(fs::path(rp_dir) / name, std::move(content));
      }
      run.commit(fs::path(rp_dir) / "manifest.json");
      std::cout << experiment_outputs(result).at("summary.txt");
      write_cluster_crosstab_csv(std::cout, result.crosstab);
    }
  } catch (const std::exception& e) {
    std::cerr << "rca: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
