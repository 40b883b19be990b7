#include "rca/classifier.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rca/csv.hpp"

namespace rca {

char label_char(Label l) noexcept {
  switch (l) {
    case Label::Y:
      return 'Y';
    case Label::P:
      return 'P';
    case Label::N:
      return 'N';
    case Label::inconclusive:
      return '?';
  }
  return '?';
}

Label parse_label(std::string_view text) {
  if (text == "Y") return Label::Y;
  if (text == "P") return Label::P;
  if (text == "N") return Label::N;
  if (text == "?") return Label::inconclusive;
  throw std::invalid_argument("bad label '" + std::string(text) + "' (expected Y, P, N or ?)");
}

std::vector<Counts<double>> ProbeGrid::contexts(Cell cell) const {
  std::array<std::size_t, 3> others{};
  std::size_t k = 0;
  for (Cell c : kAllCells) {
    if (c != cell) others[k++] = static_cast<std::size_t>(c);
  }
  std::vector<Counts<double>> out;
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        Counts<double> ctx{0, 0, 0, 0};
        ctx[others[0]] = values[i];
        ctx[others[1]] = values[j];
        ctx[others[2]] = values[l];
        const int zeros = (values[i] == 0) + (values[j] == 0) + (values[l] == 0);
        if (zeros > max_zero_cells) continue;
        out.push_back(ctx);
      }
    }
  }
  return out;
}

std::string CellResult::digest() const {
  std::ostringstream os;
  os << "contexts=" << contexts << " feasible=" << feasible << " satisfied=" << satisfied
     << " neutral=" << neutral << " violating=" << violating << " undecided=" << undecided;
  return os.str();
}

namespace {

enum class Kind { satisfied, neutral, violating, undecided };

template <class Judge>
CellResult run_cell(const Measure& m, Cell cell, const ProbeGrid& grid, bool at_infinity,
                    Judge judge) {
  const PartialDerivative d(m, cell, grid.limits.noise_floor);
  CellResult r;
  int witness_rank = 0;  // 4 violating, 3 undecided, 2 neutral, 1 any feasible
  for (const auto& ctx : grid.contexts(cell)) {
    ++r.contexts;
    LimitEstimate est = at_infinity ? limit_at_infinity(d, ctx, grid.limits)
                                    : limit_at_zero(d, ctx, grid.limits);
    if (!est.feasible) continue;
    ++r.feasible;
    const Kind kind = judge(est);
    int rank = 1;
    switch (kind) {
      case Kind::satisfied:
        ++r.satisfied;
        break;
      case Kind::neutral:
        ++r.neutral;
        rank = 2;
        break;
      case Kind::violating:
        ++r.violating;
        rank = 4;
        break;
      case Kind::undecided:
        ++r.undecided;
        rank = 3;
        break;
    }
    if (rank > witness_rank) {
      witness_rank = rank;
      r.has_witness = true;
      r.witness_context = ctx;
      r.witness = std::move(est);
    }
  }
  return r;
}

int wanted_sign(Cell c) { return (c == Cell::f11 || c == Cell::f00) ? 1 : -1; }

}  // namespace

CellResult classify_unai(const Measure& m, Cell cell, const ProbeGrid& grid) {
  CellResult r = run_cell(m, cell, grid, true, [](const LimitEstimate& e) {
    switch (e.verdict) {
      case Verdict::converges_to_zero:
        return Kind::satisfied;
      case Verdict::converges_nonzero:
      case Verdict::diverges:
        return Kind::violating;
      case Verdict::undefined:
        break;
    }
    return Kind::undecided;
  });
  if (r.violating > 0) {
    r.label = Label::N;
  } else if (r.feasible == 0 || r.undecided > 0) {
    r.label = Label::inconclusive;
  } else {
    r.label = Label::Y;
  }
  return r;
}

CellResult classify_unzr(const Measure& m, Cell cell, const ProbeGrid& grid) {
  const int want = wanted_sign(cell);
  CellResult r = run_cell(m, cell, grid, false, [want](const LimitEstimate& e) {
    if (e.verdict == Verdict::undefined) return Kind::undecided;
    if (e.value == 0.0) return Kind::neutral;
    const int sign = e.value > 0 ? 1 : -1;
    return sign == want ? Kind::satisfied : Kind::violating;
  });
  if (r.violating > 0) {
    r.label = Label::N;
  } else if (r.feasible == 0 || r.undecided > 0) {
    r.label = Label::inconclusive;
  } else if (r.neutral == 0) {
    r.label = Label::Y;
  } else if (r.satisfied > 0) {
    r.label = Label::P;
  } else {
    r.label = Label::N;  // limit identically zero
  }
  return r;
}

Label aggregate_unai(const std::array<Label, 4>& cells) {
  bool all_y = true;
  bool unknown = false;
  for (Label l : cells) {
    if (l == Label::N) return Label::N;
    if (l == Label::inconclusive) unknown = true;
    if (l != Label::Y) all_y = false;
  }
  if (unknown) return Label::inconclusive;
  return all_y ? Label::Y : Label::N;
}

Label aggregate_unzr(const std::array<Label, 4>& cells) {
  bool all_y = true;
  bool unknown = false;
  for (Label l : cells) {
    if (l == Label::N) return Label::N;
    if (l == Label::inconclusive) unknown = true;
    if (l != Label::Y) all_y = false;
  }
  if (unknown) return Label::inconclusive;
  return all_y ? Label::Y : Label::P;
}

std::array<Label, 10> RcaClassification::labels() const {
  std::array<Label, 10> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = unai_label(kReportCells[i]);
    out[5 + i] = unzr_label(kReportCells[i]);
  }
  out[4] = overall_unai;
  out[9] = overall_unzr;
  return out;
}

bool RcaClassification::inconclusive() const {
  for (Label l : labels()) {
    if (l == Label::inconclusive) return true;
  }
  return false;
}

namespace {

void finish(RcaClassification& row) {
  std::array<Label, 4> a{}, z{};
  for (std::size_t i = 0; i < 4; ++i) {
    a[i] = row.unai[i].label;
    z[i] = row.unzr[i].label;
  }
  row.overall_unai = aggregate_unai(a);
  row.overall_unzr = aggregate_unzr(z);
}

}  // namespace

RcaClassification classify_measure(const Measure& m, const ProbeGrid& grid) {
  RcaClassification row;
  row.measure = m.id();
  for (Cell c : kAllCells) {
    const auto i = static_cast<std::size_t>(c);
    row.unai[i] = classify_unai(m, c, grid);
    row.unzr[i] = classify_unzr(m, c, grid);
  }
  finish(row);
  return row;
}

std::vector<RcaClassification> classify_catalog(const Catalog& catalog, const ProbeGrid& grid,
                                                Execution exec) {
  const std::size_t n = catalog.size();
  std::vector<RcaClassification> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i].measure = catalog[i].id();
  // One task per (measure, cell, property); each writes its own slot.
  const auto tasks = static_cast<long>(n * 8);
  auto run = [&](long t) {
    const auto mi = static_cast<std::size_t>(t / 8);
    const auto rest = static_cast<std::size_t>(t % 8);
    const Cell cell = kAllCells[rest % 4];
    if (rest < 4) {
      rows[mi].unai[rest % 4] = classify_unai(catalog[mi], cell, grid);
    } else {
      rows[mi].unzr[rest % 4] = classify_unzr(catalog[mi], cell, grid);
    }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long t = 0; t < tasks; ++t) run(t);
  } else {
    for (long t = 0; t < tasks; ++t) run(t);
  }
  for (auto& row : rows) finish(row);
  return rows;
}

const std::array<std::string, 10>& classification_columns() {
  static const std::array<std::string, 10> cols = {
      "UNAI_f11", "UNAI_f00", "UNAI_f10", "UNAI_f01", "UNAI",
      "UNZR_f11", "UNZR_f00", "UNZR_f10", "UNZR_f01", "UNZR"};
  return cols;
}

void write_classification_csv(std::ostream& out, const std::vector<RcaClassification>& rows) {
  out << "measure";
  for (const auto& c : classification_columns()) out << ',' << c;
  out << '\n';
  for (const auto& row : rows) {
    out << row.measure;
    for (Label l : row.labels()) out << ',' << label_char(l);
    out << '\n';
  }
}

std::vector<ExpectedRow> read_classification_csv(std::istream& in) {
  CsvReader reader(in);
  const auto& cols = classification_columns();
  const auto idx = reader.require_header({"measure", cols[0], cols[1], cols[2], cols[3],
                                          cols[4], cols[5], cols[6], cols[7], cols[8],
                                          cols[9]});
  std::vector<ExpectedRow> out;
  std::vector<std::string> row;
  while (reader.next(row)) {
    ExpectedRow e;
    e.measure = row[idx[0]];
    for (std::size_t i = 0; i < 10; ++i) {
      try {
        e.labels[i] = parse_label(row[idx[i + 1]]);
      } catch (const std::invalid_argument& err) {
        throw CsvError(reader.line(), err.what());
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

void write_evidence_csv(std::ostream& out, const RcaClassification& row) {
  out << "property,cell,label,ctx_f11,ctx_f10,ctx_f01,ctx_f00,verdict,limit,point,derivative,"
         "measure,stencil\n";
  auto emit = [&](const char* prop, Cell c, const CellResult& r) {
    if (!r.has_witness) {
      out << prop << ',' << cell_name(c) << ',' << label_char(r.label)
          << ",,,,,none,undefined,,,,\n";
      return;
    }
    for (const auto& s : r.witness.evidence) {
      out << prop << ',' << cell_name(c) << ',' << label_char(r.label);
      for (std::size_t i = 0; i < 4; ++i) {
        out << ',';
        if (i != static_cast<std::size_t>(c)) out << format_number(r.witness_context[i]);
      }
      out << ',' << verdict_name(r.witness.verdict) << ',' << format_number(r.witness.value)
          << ',' << format_number(s.point) << ',' << format_number(s.derivative) << ','
          << format_number(s.measure) << ',' << stencil_name(s.stencil) << '\n';
    }
  };
  for (Cell c : kReportCells) emit("UNAI", c, row.unai[static_cast<std::size_t>(c)]);
  for (Cell c : kReportCells) emit("UNZR", c, row.unzr[static_cast<std::size_t>(c)]);
}

}  // namespace rca
