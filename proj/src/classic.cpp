#include "rca/classic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rca/embedded.hpp"

namespace rca {

std::string_view property_name(ClassicProperty p) noexcept {
  switch (p) {
    case ClassicProperty::p1:
      return "P1";
    case ClassicProperty::p2:
      return "P2";
    case ClassicProperty::p3:
      return "P3";
    case ClassicProperty::o1:
      return "O1";
    case ClassicProperty::o2:
      return "O2";
    case ClassicProperty::o3:
      return "O3";
    case ClassicProperty::o3_prime:
      return "O3'";
    case ClassicProperty::o4:
      return "O4";
  }
  return "?";
}

ClassicProperty parse_property(std::string_view name) {
  for (ClassicProperty p : kClassicProperties) {
    if (property_name(p) == name) return p;
  }
  throw std::invalid_argument("unknown property '" + std::string(name) + "'");
}

ClassicConfig ClassicConfig::builtin() {
  ClassicConfig cfg;
  std::istringstream gens{std::string(embedded_file("generator_tables.csv"))};
  cfg.generators = read_tables_csv(gens);
  std::istringstream ind{std::string(embedded_file("independent_tables.csv"))};
  cfg.independent = read_tables_csv(ind);
  return cfg;
}

bool nearly_equal(double a, double b, double tol) {
  if (std::isnan(a) || std::isnan(b)) return false;
  if (std::isinf(a) || std::isinf(b)) return a == b;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

namespace {

PropertyVerdict satisfied() { return {Label::Y, std::nullopt}; }

PropertyVerdict violated(std::vector<ContingencyTable> tables, const Measure& m,
                         std::string reason) {
  Counterexample ce;
  for (const auto& t : tables) ce.values.push_back(m.evaluate(t));
  ce.tables = std::move(tables);
  ce.reason = std::move(reason);
  return {Label::N, std::move(ce)};
}

/// Walks `path` (consecutive tables) and classifies the direction of each step.
/// Returns the index of the first step against `direction` (+1 non-decreasing, -1
/// non-increasing), or -1; sets `moved` when some step goes strictly along `direction`.
struct PathResult {
  bool undefined = false;
  std::size_t bad_step = 0;
  bool against = false;
  bool moved = false;
};

PathResult walk(const Measure& m, const std::vector<ContingencyTable>& path, int direction,
                double tol) {
  PathResult r;
  double prev = m.evaluate(path.front());
  if (std::isnan(prev)) {
    r.undefined = true;
    return r;
  }
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double cur = m.evaluate(path[i]);
    if (std::isnan(cur)) {
      r.undefined = true;
      r.bad_step = i;
      return r;
    }
    if (!nearly_equal(prev, cur, tol)) {
      const bool up = cur > prev;
      if ((direction > 0) == up) {
        r.moved = true;
      } else {
        r.against = true;
        r.bad_step = i;
        return r;
      }
    }
    prev = cur;
  }
  return r;
}

std::vector<std::vector<ContingencyTable>> p2_paths(const ClassicConfig& cfg) {
  std::vector<std::vector<ContingencyTable>> paths;
  for (const auto& t : cfg.generators) {
    const double room = std::min(t.f10(), t.f01());
    if (room <= 0) continue;
    const double step = 0.8 * room / cfg.path_steps;
    std::vector<ContingencyTable> path;
    for (int k = 0; k <= cfg.path_steps; ++k) {
      const double d = k * step;
      path.emplace_back(t.f11() + d, t.f10() - d, t.f01() - d, t.f00() + d);
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

std::vector<std::vector<ContingencyTable>> p3_paths(const ClassicConfig& cfg) {
  std::vector<std::vector<ContingencyTable>> paths;
  for (const auto& t : cfg.generators) {
    if (t.f00() <= 0) continue;
    const double step = 0.8 * t.f00() / cfg.path_steps;
    std::vector<ContingencyTable> grow_a, grow_b;
    for (int k = 0; k <= cfg.path_steps; ++k) {
      const double d = k * step;
      grow_a.emplace_back(t.f11(), t.f10() + d, t.f01(), t.f00() - d);
      grow_b.emplace_back(t.f11(), t.f10(), t.f01() + d, t.f00() - d);
    }
    paths.push_back(std::move(grow_a));
    paths.push_back(std::move(grow_b));
  }
  return paths;
}

PropertyVerdict check_monotone(const Measure& m, const ClassicConfig& cfg,
                               const std::vector<std::vector<ContingencyTable>>& paths,
                               int direction, const char* what) {
  bool moved = false;
  for (const auto& path : paths) {
    const PathResult r = walk(m, path, direction, cfg.relative_tolerance);
    if (r.undefined) {
      const std::size_t i = r.bad_step;
      return violated({path.front(), path[i]}, m, std::string("undefined along the ") + what);
    }
    if (r.against) {
      return violated({path[r.bad_step - 1], path[r.bad_step]}, m,
                      std::string("moves against the ") + what);
    }
    moved = moved || r.moved;
  }
  if (!moved) {
    if (paths.empty()) return violated({}, m, "no admissible path");
    return violated({paths.front().front(), paths.front().back()}, m,
                    std::string("never moves strictly along the ") + what);
  }
  return satisfied();
}

}  // namespace

PropertyVerdict check_p1(const Measure& m, const ClassicConfig& cfg) {
  for (const auto& t : cfg.independent) {
    const double v = m.evaluate(t);
    if (!nearly_equal(v, 0.0, cfg.relative_tolerance)) {
      return violated({t}, m, "nonzero at statistical independence");
    }
  }
  return satisfied();
}

PropertyVerdict check_p2(const Measure& m, const ClassicConfig& cfg) {
  return check_monotone(m, cfg, p2_paths(cfg), +1, "co-presence path");
}

PropertyVerdict check_p3(const Measure& m, const ClassicConfig& cfg) {
  return check_monotone(m, cfg, p3_paths(cfg), -1, "margin growth path");
}

PropertyVerdict check_o(const Measure& m, ClassicProperty which, const ClassicConfig& cfg) {
  const double tol = cfg.relative_tolerance;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> log_factor(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> log_null(0.0, std::log(1e4));
  for (const auto& t : cfg.generators) {
    const double v = m.evaluate(t);
    switch (which) {
      case ClassicProperty::o1: {
        const auto u = transform(t, TransformKind::swap_variables);
        if (!nearly_equal(v, m.evaluate(u), tol)) return violated({t, u}, m, "not symmetric");
        break;
      }
      case ClassicProperty::o2: {
        for (int s = 0; s < cfg.samples_per_table; ++s) {
          const double k1 = std::exp(log_factor(rng)), k2 = std::exp(log_factor(rng));
          const double l1 = std::exp(log_factor(rng)), l2 = std::exp(log_factor(rng));
          const auto u = transform(transform(t, TransformKind::scale_rows, {k1, k2}),
                                   TransformKind::scale_cols, {l1, l2});
          if (!nearly_equal(v, m.evaluate(u), tol)) {
            return violated({t, u}, m, "changes under row/column scaling");
          }
        }
        break;
      }
      case ClassicProperty::o3: {
        const auto r = transform(t, TransformKind::swap_rows);
        const auto c = transform(t, TransformKind::swap_cols);
        if (!nearly_equal(-v, m.evaluate(r), tol)) {
          return violated({t, r}, m, "row permutation does not negate");
        }
        if (!nearly_equal(-v, m.evaluate(c), tol)) {
          return violated({t, c}, m, "column permutation does not negate");
        }
        break;
      }
      case ClassicProperty::o3_prime: {
        const auto u = transform(t, TransformKind::invert);
        if (!nearly_equal(v, m.evaluate(u), tol)) {
          return violated({t, u}, m, "changes under inversion");
        }
        break;
      }
      case ClassicProperty::o4: {
        for (int s = 0; s < cfg.samples_per_table; ++s) {
          const double k = std::round(std::exp(log_null(rng)));
          const auto u = transform(t, TransformKind::add_null, {k, 1.0});
          if (!nearly_equal(v, m.evaluate(u), tol)) {
            return violated({t, u}, m, "changes when null transactions are added");
          }
        }
        break;
      }
      default:
        throw std::invalid_argument("check_o needs one of O1, O2, O3, O3', O4");
    }
  }
  return satisfied();
}

PropertyVerdict check_property(const Measure& m, ClassicProperty p, const ClassicConfig& cfg) {
  switch (p) {
    case ClassicProperty::p1:
      return check_p1(m, cfg);
    case ClassicProperty::p2:
      return check_p2(m, cfg);
    case ClassicProperty::p3:
      return check_p3(m, cfg);
    default:
      return check_o(m, p, cfg);
  }
}

ClassicPropertyReport check_classic(const Measure& m, const ClassicConfig& cfg) {
  ClassicPropertyReport r;
  r.measure = m.id();
  for (std::size_t i = 0; i < kClassicProperties.size(); ++i) {
    r.verdicts[i] = check_property(m, kClassicProperties[i], cfg);
  }
  return r;
}

std::vector<ClassicPropertyReport> check_catalog(const Catalog& catalog,
                                                 const ClassicConfig& cfg) {
  std::vector<ClassicPropertyReport> out(catalog.size());
  const auto n = static_cast<long>(catalog.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = check_classic(catalog[static_cast<std::size_t>(i)], cfg);
  }
  return out;
}

CrossTab crosstab(const std::vector<ClassicPropertyReport>& classic,
                  const std::vector<RcaClassification>& rca, ClassicProperty property,
                  bool unzr) {
  if (classic.size() != rca.size()) {
    throw std::invalid_argument("classic and RCA tables cover different measure sets");
  }
  CrossTab ct;
  ct.property = property;
  ct.columns = unzr ? std::vector<char>{'Y', 'P', 'N'} : std::vector<char>{'Y', 'N'};
  bool unknown = false;
  for (const auto& r : rca) {
    const Label l = unzr ? r.overall_unzr : r.overall_unai;
    if (l == Label::inconclusive) unknown = true;
  }
  if (unknown) ct.columns.push_back('?');
  ct.counts[0].assign(ct.columns.size(), 0);
  ct.counts[1].assign(ct.columns.size(), 0);
  for (std::size_t i = 0; i < rca.size(); ++i) {
    if (classic[i].measure != rca[i].measure) {
      throw std::invalid_argument("measure order differs: '" + classic[i].measure + "' vs '" +
                                  rca[i].measure + "'");
    }
    const int row = classic[i][property].satisfied == Label::Y ? 0 : 1;
    const char col = label_char(unzr ? rca[i].overall_unzr : rca[i].overall_unai);
    const auto it = std::find(ct.columns.begin(), ct.columns.end(), col);
    ++ct.counts[row][static_cast<std::size_t>(it - ct.columns.begin())];
  }
  return ct;
}

void write_crosstab_csv(std::ostream& out, const std::vector<ClassicPropertyReport>& classic,
                        const std::vector<RcaClassification>& rca) {
  out << "property,state,UNAI_Y,UNAI_N,UNZR_Y,UNZR_P,UNZR_N\n";
  for (ClassicProperty p : kClassicProperties) {
    const CrossTab a = crosstab(classic, rca, p, false);
    const CrossTab z = crosstab(classic, rca, p, true);
    for (int row = 0; row < 2; ++row) {
      out << '"' << property_name(p) << '"' << ',' << (row == 0 ? "satisfied" : "not-satisfied");
      for (std::size_t c = 0; c < 2; ++c) out << ',' << a.counts[row][c];
      for (std::size_t c = 0; c < 3; ++c) out << ',' << z.counts[row][c];
      out << '\n';
    }
  }
}

void write_classic_csv(std::ostream& out, const std::vector<ClassicPropertyReport>& reports) {
  out << "measure";
  for (ClassicProperty p : kClassicProperties) out << ",\"" << property_name(p) << '"';
  out << '\n';
  for (const auto& r : reports) {
    out << r.measure;
    for (const auto& v : r.verdicts) out << ',' << label_char(v.satisfied);
    out << '\n';
  }
}

}  // namespace rca
