#include "rca/pipeline.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rca/csv.hpp"
#include "rca/embedded.hpp"
#include "rca/synth.hpp"

namespace rca {

std::vector<ExpectedRow> label_rows(const std::vector<RcaClassification>& rows) {
  std::vector<ExpectedRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back({r.measure, r.labels()});
  return out;
}

const std::vector<ExpectedRow>& published_labels() {
  static const std::vector<ExpectedRow> rows = [] {
    std::istringstream in{std::string(embedded_file("published_labels.csv"))};
    return read_classification_csv(in);
  }();
  return rows;
}

ProbeGrid probe_grid_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("probe grid must be a JSON object");
  ProbeGrid g;
  for (const auto& [key, value] : j.items()) {
    if (key == "values") {
      g.values = value.get<std::vector<double>>();
    } else if (key == "max_zero_cells") {
      g.max_zero_cells = value.get<int>();
    } else if (key == "infinity_ladder") {
      g.limits.infinity_ladder = value.get<std::vector<double>>();
    } else if (key == "zero_ladder") {
      g.limits.zero_ladder = value.get<std::vector<double>>();
    } else if (key == "infinity_decay") {
      g.limits.infinity_decay = value.get<double>();
    } else if (key == "zero_decay") {
      g.limits.zero_decay = value.get<double>();
    } else if (key == "stabilization") {
      g.limits.stabilization = value.get<double>();
    } else if (key == "monotone_slack") {
      g.limits.monotone_slack = value.get<double>();
    } else if (key == "noise_floor") {
      g.limits.noise_floor = value.get<double>();
    } else {
      throw std::invalid_argument("unknown probe grid key '" + key + "'");
    }
  }
  if (g.values.empty()) throw std::invalid_argument("probe grid needs at least one value");
  if (g.limits.infinity_ladder.size() < 3 || g.limits.zero_ladder.size() < 3) {
    throw std::invalid_argument("limit ladders need at least 3 points");
  }
  return g;
}

std::vector<Mismatch> compare_labels(const std::vector<RcaClassification>& got,
                                     const std::vector<ExpectedRow>& expected) {
  std::vector<Mismatch> out;
  for (const auto& row : got) {
    const auto it = std::find_if(expected.begin(), expected.end(),
                                 [&](const ExpectedRow& e) { return e.measure == row.measure; });
    if (it == expected.end()) {
      throw std::invalid_argument("no expected labels for measure '" + row.measure + "'");
    }
    const auto labels = row.labels();
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (labels[k] == it->labels[k]) continue;
      Mismatch m{row.measure, k, it->labels[k], labels[k], nullptr, Cell::f11};
      if (k != 4 && k != 9) {
        m.cell = kReportCells[k % 5];
        const auto c = static_cast<std::size_t>(m.cell);
        m.evidence = k < 4 ? &row.unai[c] : &row.unzr[c];
      }
      out.push_back(m);
    }
  }
  return out;
}

void write_mismatch_csv(std::ostream& out, const std::vector<Mismatch>& mismatches,
                        const Catalog& catalog) {
  out << "measure,column,expected,got,context,verdict,limit,ladder,digest,note\n";
  for (const auto& m : mismatches) {
    out << m.measure << ',' << classification_columns()[m.column] << ','
        << label_char(m.expected) << ',' << label_char(m.got) << ',';
    if (m.evidence && m.evidence->has_witness) {
      const auto& r = *m.evidence;
      std::string ctx;
      for (Cell c : kAllCells) {
        if (c == m.cell) continue;
        if (!ctx.empty()) ctx += ' ';
        ctx += std::string(cell_name(c)) + '=' + format_number(r.witness_context[static_cast<std::size_t>(c)]);
      }
      std::string ladder;
      for (const auto& s : r.witness.evidence) {
        if (!ladder.empty()) ladder += ' ';
        ladder += format_number(s.point) + ':' + format_number(s.derivative);
      }
      out << ctx << ',' << verdict_name(r.witness.verdict) << ','
          << format_number(r.witness.value) << ',' << ladder << ",\"" << r.digest() << '"';
    } else {
      out << ",,,,";
    }
    const Measure* measure = catalog.find(m.measure);
    std::string note = measure ? measure->source_note() : "";
    for (char& ch : note) {
      if (ch == '"') ch = '\'';
    }
    out << ",\"" << note << "\"\n";
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.preset != "sparse" && cfg.preset != "dense") {
    throw std::invalid_argument("unknown experiment '" + cfg.preset +
                                "' (expected sparse or dense)");
  }
  const bool sparse = cfg.preset == "sparse";
  ExperimentResult r;
  if (cfg.transactions) {
    const auto all = mine_rules(load_transactions(*cfg.transactions), cfg.mine, cfg.exec);
    r.mined_rules = all.size();
    r.rules = sparse ? filter_sparse(all) : filter_dense(all);
  } else {
    r.rules = rules_from_tables(generate(GridPreset::named(cfg.preset)));
    r.mined_rules = r.rules.size();
  }
  std::vector<ContingencyTable> tables;
  tables.reserve(r.rules.size());
  for (const auto& rule : r.rules) tables.push_back(rule.table);

  const Catalog& catalog = Catalog::builtin();
  r.ranks = rank_rules(tables, catalog, cfg.exec);
  r.rho = spearman_matrix(r.ranks, cfg.exec);
  r.clusters = cluster(r.rho, cfg.threshold);
  r.labels = cfg.labels.empty() ? label_rows(classify_catalog(catalog, cfg.grid, cfg.exec))
                                : cfg.labels;
  r.column = sparse ? "UNZR_f11" : "UNZR_f00";
  r.crosstab = property_crosstab(r.clusters, label_column(r.labels, r.column), r.column);
  if (!cfg.reference.empty()) {
    const auto& parts = published_partitions();
    const auto it = parts.find(cfg.reference);
    if (it == parts.end()) {
      throw std::invalid_argument("no reference partition '" + cfg.reference + "'");
    }
    r.rand_index = rand_index(r.clusters, it->second);
    r.adjusted_rand_index = adjusted_rand_index(r.clusters, it->second);
  }
  return r;
}

std::map<std::string, std::string> experiment_outputs(const ExperimentResult& r) {
  std::map<std::string, std::string> files;
  std::ostringstream rules, rho, clusters, crosstab, labels, summary;
  write_rules_csv(rules, r.rules);
  write_correlation_csv(rho, r.rho);
  write_clusters(clusters, r.clusters);
  write_cluster_crosstab_csv(crosstab, r.crosstab);

  labels << "measure";
  for (const auto& c : classification_columns()) labels << ',' << c;
  labels << '\n';
  for (const auto& row : r.labels) {
    labels << row.measure;
    for (Label l : row.labels) labels << ',' << label_char(l);
    labels << '\n';
  }

  summary << "rules " << r.rules.size() << " (of " << r.mined_rules << ")\n";
  summary << "clusters " << r.clusters.size() << '\n';
  summary << "column " << r.column << '\n';
  for (const auto& id : r.ranks.fully_masked()) summary << "fully-masked " << id << '\n';
  if (r.rand_index) summary << "rand-index " << format_number(*r.rand_index) << '\n';
  if (r.adjusted_rand_index) {
    summary << "adjusted-rand-index " << format_number(*r.adjusted_rand_index) << '\n';
  }

  files["rules.csv"] = rules.str();
  files["rho.csv"] = rho.str();
  files["clusters.txt"] = clusters.str();
  files["crosstab.csv"] = crosstab.str();
  files["labels.csv"] = labels.str();
  files["summary.txt"] = summary.str();
  return files;
}

}  // namespace rca
