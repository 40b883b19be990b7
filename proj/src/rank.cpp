#include "rca/rank.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rca/csv.hpp"
#include "rca/embedded.hpp"

namespace rca {

std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order;
  order.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isnan(values[i])) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<double> ranks(values.size(), undefined_value<double>());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

std::vector<std::string> RankMatrix::fully_masked() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (defined[i] == 0) out.push_back(measures[i]);
  }
  return out;
}

RankMatrix rank_rules(const std::vector<ContingencyTable>& rules, const Catalog& catalog,
                      Execution exec) {
  if (rules.size() < 2) throw std::invalid_argument("ranking needs at least 2 rules");
  RankMatrix rm;
  rm.rules = rules.size();
  const std::size_t n = catalog.size();
  rm.measures.reserve(n);
  for (const auto& m : catalog.measures()) rm.measures.push_back(m.id());
  rm.values.assign(n, {});
  rm.ranks.assign(n, {});
  rm.defined.assign(n, 0);
  auto row = [&](std::size_t i) {
    std::vector<double> v(rules.size());
    for (std::size_t r = 0; r < rules.size(); ++r) v[r] = catalog[i].evaluate(rules[r]);
    rm.defined[i] = static_cast<std::size_t>(
        std::count_if(v.begin(), v.end(), [](double x) { return !std::isnan(x); }));
    rm.ranks[i] = average_ranks(v);
    rm.values[i] = std::move(v);
  };
  const auto count = static_cast<long>(n);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) row(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < count; ++i) row(static_cast<std::size_t>(i));
  }
  return rm;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  const auto n = static_cast<double>(x.size());
  if (x.empty()) return undefined_value<double>();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return undefined_value<double>();
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(const RankMatrix& rm, std::size_t i, std::size_t j, std::size_t min_overlap) {
  const auto& vi = rm.values.at(i);
  const auto& vj = rm.values.at(j);
  if (rm.defined[i] == rm.rules && rm.defined[j] == rm.rules) {
    if (rm.rules < min_overlap) return undefined_value<double>();
    return pearson(rm.ranks[i], rm.ranks[j]);
  }
  std::vector<double> xi, xj;
  for (std::size_t r = 0; r < rm.rules; ++r) {
    if (!std::isnan(vi[r]) && !std::isnan(vj[r])) {
      xi.push_back(vi[r]);
      xj.push_back(vj[r]);
    }
  }
  if (xi.size() < min_overlap) return undefined_value<double>();
  return pearson(average_ranks(xi), average_ranks(xj));
}

CorrelationMatrix spearman_matrix(const RankMatrix& rm, Execution exec,
                                  std::size_t min_overlap) {
  const std::size_t n = rm.measures.size();
  CorrelationMatrix m;
  m.measures = rm.measures;
  m.rho.assign(n * n, undefined_value<double>());
  for (std::size_t i = 0; i < n; ++i) m.rho[i * n + i] = 1.0;
  const auto pairs = static_cast<long>(n * n);
  auto entry = [&](long p) {
    const auto i = static_cast<std::size_t>(p) / n, j = static_cast<std::size_t>(p) % n;
    if (i >= j) return;
    const double r = spearman(rm, i, j, min_overlap);
    m.rho[i * n + j] = r;
    m.rho[j * n + i] = r;
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long p = 0; p < pairs; ++p) entry(p);
  } else {
    for (long p = 0; p < pairs; ++p) entry(p);
  }
  return m;
}

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& m) {
  out << "measure";
  for (const auto& id : m.measures) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.measures[i];
    for (std::size_t j = 0; j < m.size(); ++j) out << ',' << format_number(m(i, j));
    out << '\n';
  }
}

CorrelationMatrix read_correlation_csv(std::istream& in) {
  CsvReader reader(in);
  const auto& header = reader.read_header();
  if (header.empty() || header[0] != "measure") {
    throw CsvError(reader.line(), "expected a header starting with 'measure'");
  }
  CorrelationMatrix m;
  m.measures.assign(header.begin() + 1, header.end());
  std::vector<std::string> row;
  std::size_t i = 0;
  while (reader.next(row)) {
    if (i >= m.size() || row[0] != m.measures[i]) {
      throw CsvError(reader.line(), "row '" + row[0] + "' does not follow the header order");
    }
    for (std::size_t j = 1; j < row.size(); ++j) m.rho.push_back(reader.number(row, j));
    ++i;
  }
  if (i != m.size()) throw CsvError(reader.line(), "matrix is not square");
  return m;
}

const std::string& ClusterAssignment::label_of(const std::string& measure) const {
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (std::find(members[k].begin(), members[k].end(), measure) != members[k].end()) {
      return labels[k];
    }
  }
  throw std::out_of_range("measure '" + measure + "' is not clustered");
}

std::map<std::string, std::string> ClusterAssignment::by_measure() const {
  std::map<std::string, std::string> out;
  for (std::size_t k = 0; k < members.size(); ++k) {
    for (const auto& id : members[k]) out[id] = labels[k];
  }
  return out;
}

namespace {

std::string cluster_label(std::size_t k) {
  std::string s;
  ++k;
  while (k > 0) {
    --k;
    s.insert(s.begin(), static_cast<char>('A' + k % 26));
    k /= 26;
  }
  return s;
}

}  // namespace

ClusterAssignment ClusterAssignment::from_blocks(std::vector<std::vector<std::string>> blocks) {
  std::stable_sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
  });
  ClusterAssignment ca;
  for (std::size_t k = 0; k < blocks.size(); ++k) ca.labels.push_back(cluster_label(k));
  ca.members = std::move(blocks);
  return ca;
}

ClusterAssignment cluster(const CorrelationMatrix& m, double threshold) {
  if (!(threshold > -1.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold must lie strictly between -1 and 1");
  }
  const std::size_t n = m.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) >= threshold) parent[find(i)] = find(j);  // NaN compares false
    }
  }
  std::map<std::size_t, std::vector<std::string>> comps;
  std::vector<std::size_t> first_seen;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (!comps.count(root)) first_seen.push_back(root);
    comps[root].push_back(m.measures[i]);
  }
  std::vector<std::vector<std::string>> blocks;
  for (std::size_t root : first_seen) blocks.push_back(std::move(comps[root]));
  return ClusterAssignment::from_blocks(std::move(blocks));
}

void write_clusters(std::ostream& out, const ClusterAssignment& ca) {
  for (std::size_t k = 0; k < ca.size(); ++k) {
    out << ca.labels[k] << " (" << ca.members[k].size() << "):";
    for (const auto& id : ca.members[k]) out << ' ' << id;
    out << '\n';
  }
}

ClusterAssignment read_clusters(std::istream& in) {
  ClusterAssignment ca;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    const auto paren = line.find(" (");
    if (colon == std::string::npos || paren == std::string::npos || paren > colon) {
      throw CsvError(lineno, "expected 'LABEL (SIZE): id id ...'");
    }
    std::istringstream ids(line.substr(colon + 1));
    std::vector<std::string> members;
    for (std::string id; ids >> id;) members.push_back(id);
    const std::string size_text = line.substr(paren + 2, colon - paren - 3);
    if (size_text != std::to_string(members.size())) {
      throw CsvError(lineno, "cluster size " + size_text + " does not match " +
                                 std::to_string(members.size()) + " listed measures");
    }
    ca.labels.push_back(line.substr(0, paren));
    ca.members.push_back(std::move(members));
  }
  return ca;
}

std::size_t ClusterCrossTab::count(std::size_t cluster, char label) const {
  const auto it = std::find(columns.begin(), columns.end(), label);
  if (it == columns.end()) return 0;
  return counts.at(cluster)[static_cast<std::size_t>(it - columns.begin())];
}

ClusterCrossTab property_crosstab(const ClusterAssignment& ca,
                                  const std::map<std::string, Label>& labels,
                                  std::string property) {
  ClusterCrossTab ct;
  ct.property = std::move(property);
  ct.columns = {'N', 'P', 'Y'};
  for (const auto& block : ca.members) {
    for (const auto& id : block) {
      const auto it = labels.find(id);
      if (it == labels.end()) {
        throw std::invalid_argument("no " + ct.property + " label for measure '" + id + "'");
      }
      if (it->second == Label::inconclusive && ct.columns.size() == 3) ct.columns.push_back('?');
    }
  }
  for (std::size_t k = 0; k < ca.size(); ++k) {
    ct.clusters.push_back(ca.labels[k]);
    ct.sizes.push_back(ca.members[k].size());
    std::vector<std::size_t> row(ct.columns.size(), 0);
    for (const auto& id : ca.members[k]) {
      const char c = label_char(labels.at(id));
      const auto it = std::find(ct.columns.begin(), ct.columns.end(), c);
      ++row[static_cast<std::size_t>(it - ct.columns.begin())];
    }
    ct.counts.push_back(std::move(row));
  }
  return ct;
}

std::map<std::string, Label> label_column(const std::vector<ExpectedRow>& rows,
                                          const std::string& column) {
  const auto& cols = classification_columns();
  const auto it = std::find(cols.begin(), cols.end(), column);
  if (it == cols.end()) throw std::invalid_argument("unknown label column '" + column + "'");
  const auto idx = static_cast<std::size_t>(it - cols.begin());
  std::map<std::string, Label> out;
  for (const auto& r : rows) out[r.measure] = r.labels[idx];
  return out;
}

void write_cluster_crosstab_csv(std::ostream& out, const ClusterCrossTab& ct) {
  out << "cluster,size";
  for (char c : ct.columns) out << ',' << c;
  out << '\n';
  for (std::size_t k = 0; k < ct.clusters.size(); ++k) {
    out << ct.clusters[k] << ',' << ct.sizes[k];
    for (std::size_t v : ct.counts[k]) out << ',' << v;
    out << '\n';
  }
}

namespace {

// Pair counts shared by the plain and adjusted Rand index.
struct Agreement {
  double same_both = 0, same_a = 0, same_b = 0, pairs = 0;
};

Agreement agreement(const ClusterAssignment& a, const ClusterAssignment& b) {
  const auto la = a.by_measure();
  const auto lb = b.by_measure();
  std::vector<std::pair<std::string, std::string>> both;
  for (const auto& [id, label] : la) {
    const auto it = lb.find(id);
    if (it != lb.end()) both.emplace_back(label, it->second);
  }
  Agreement g;
  for (std::size_t i = 0; i < both.size(); ++i) {
    for (std::size_t j = i + 1; j < both.size(); ++j) {
      const bool sa = both[i].first == both[j].first;
      const bool sb = both[i].second == both[j].second;
      g.same_a += sa;
      g.same_b += sb;
      g.same_both += sa && sb;
      ++g.pairs;
    }
  }
  return g;
}

}  // namespace

double rand_index(const ClusterAssignment& a, const ClusterAssignment& b) {
  const Agreement g = agreement(a, b);
  if (g.pairs == 0) return undefined_value<double>();
  const double apart_both = g.pairs - g.same_a - g.same_b + g.same_both;
  return (g.same_both + apart_both) / g.pairs;
}

double adjusted_rand_index(const ClusterAssignment& a, const ClusterAssignment& b) {
  const Agreement g = agreement(a, b);
  if (g.pairs == 0) return undefined_value<double>();
  const double expected = g.same_a * g.same_b / g.pairs;
  const double max_index = 0.5 * (g.same_a + g.same_b);
  if (max_index == expected) return 1.0;
  return (g.same_both - expected) / (max_index - expected);
}

std::map<std::string, ClusterAssignment> read_partitions_csv(std::istream& in) {
  CsvReader reader(in);
  const auto idx = reader.require_header({"dataset", "cluster", "measure"});
  std::map<std::string, ClusterAssignment> out;
  std::vector<std::string> row;
  while (reader.next(row)) {
    auto& ca = out[row[idx[0]]];
    const std::string& label = row[idx[1]];
    auto it = std::find(ca.labels.begin(), ca.labels.end(), label);
    if (it == ca.labels.end()) {
      ca.labels.push_back(label);
      ca.members.emplace_back();
      it = ca.labels.end() - 1;
    }
    ca.members[static_cast<std::size_t>(it - ca.labels.begin())].push_back(row[idx[2]]);
  }
  return out;
}

const std::map<std::string, ClusterAssignment>& published_partitions() {
  static const std::map<std::string, ClusterAssignment> parts = [] {
    std::istringstream in{std::string(embedded_file("published_partitions.csv"))};
    return read_partitions_csv(in);
  }();
  return parts;
}

}  // namespace rca
