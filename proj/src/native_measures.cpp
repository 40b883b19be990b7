// Measures whose usual statement is a sum over the cells of the table with the
// information-theoretic convention 0 log 0 = 0, or a sum of maxima. They are evaluated
// directly rather than through the DSL.

#include <array>
#include <string_view>

#include "rca/measure.hpp"

namespace rca {
namespace {

template <class T>
struct Probabilities {
  T ab, a_nb, na_b, na_nb;  // joint cells
  T a, na, b, nb;           // margins

  explicit Probabilities(const Counts<T>& c) {
    const T n = c[0] + c[1] + c[2] + c[3];
    ab = ext_div(c[0], n);
    a_nb = ext_div(c[1], n);
    na_b = ext_div(c[2], n);
    na_nb = ext_div(c[3], n);
    a = ext_div(c[0] + c[1], n);
    na = ext_div(c[2] + c[3], n);
    b = ext_div(c[0] + c[2], n);
    nb = ext_div(c[1] + c[3], n);
  }
};

template <class T>
T log2_of_e() {
  using std::log;
  return T(1) / log(T(2));
}

template <class T>
T one_way_support(const Counts<T>& c) {
  const Probabilities<T> p(c);
  return ext_div(xlog_ratio(p.ab, p.a * p.b), p.a) * log2_of_e<T>();
}

template <class T>
T two_way_support(const Counts<T>& c) {
  const Probabilities<T> p(c);
  return xlog_ratio(p.ab, p.a * p.b) * log2_of_e<T>();
}

template <class T>
T j_measure(const Counts<T>& c) {
  const Probabilities<T> p(c);
  return xlog_ratio(p.ab, p.a * p.b) + xlog_ratio(p.a_nb, p.a * p.nb);
}

template <class T>
T mutual_information(const Counts<T>& c) {
  const Probabilities<T> p(c);
  return xlog_ratio(p.ab, p.a * p.b) + xlog_ratio(p.a_nb, p.a * p.nb) +
         xlog_ratio(p.na_b, p.na * p.b) + xlog_ratio(p.na_nb, p.na * p.nb);
}

template <class T>
T normalized_mutual_information(const Counts<T>& c) {
  const Probabilities<T> p(c);
  const T entropy_a = -(xlog_ratio(p.a, T(1)) + xlog_ratio(p.na, T(1)));
  return ext_div(mutual_information(c), entropy_a);
}

template <class T>
T gini_index(const Counts<T>& c) {
  const Probabilities<T> p(c);
  const T b_given_a = ext_div(c[0], c[0] + c[1]);
  const T nb_given_a = ext_div(c[1], c[0] + c[1]);
  const T b_given_na = ext_div(c[2], c[2] + c[3]);
  const T nb_given_na = ext_div(c[3], c[2] + c[3]);
  return p.a * (b_given_a * b_given_a + nb_given_a * nb_given_a) +
         p.na * (b_given_na * b_given_na + nb_given_na * nb_given_na) - p.b * p.b -
         p.nb * p.nb;
}

template <class T>
T goodman_kruskal(const Counts<T>& c) {
  const Probabilities<T> p(c);
  const T margins = ext_max(p.a, p.na) + ext_max(p.b, p.nb);
  const T num = ext_max(p.ab, p.a_nb) + ext_max(p.na_b, p.na_nb) + ext_max(p.ab, p.na_b) +
                ext_max(p.a_nb, p.na_nb) - margins;
  return ext_div(num, T(2) - margins);
}

template <template <class> class F>
constexpr NativeMeasure make() {
  return {+[](const Counts<double>& c) { return F<double>::run(c); },
          +[](const Counts<HighPrecision>& c) { return F<HighPrecision>::run(c); }};
}

#define RCA_NATIVE(name)                                        \
  template <class T>                                            \
  struct name##_fn {                                            \
    static T run(const Counts<T>& c) { return name<T>(c); }     \
  };
RCA_NATIVE(one_way_support)
RCA_NATIVE(two_way_support)
RCA_NATIVE(j_measure)
RCA_NATIVE(mutual_information)
RCA_NATIVE(normalized_mutual_information)
RCA_NATIVE(gini_index)
RCA_NATIVE(goodman_kruskal)
#undef RCA_NATIVE

struct NativeEntry {
  std::string_view id;
  NativeMeasure fns;
};

const std::array<NativeEntry, 7> kNatives = {{
    {"one-way-support", make<one_way_support_fn>()},
    {"two-way-support", make<two_way_support_fn>()},
    {"j-measure", make<j_measure_fn>()},
    {"mutual-information", make<mutual_information_fn>()},
    {"normalized-mutual-information", make<normalized_mutual_information_fn>()},
    {"gini-index", make<gini_index_fn>()},
    {"goodman-kruskal", make<goodman_kruskal_fn>()},
}};

}  // namespace

std::optional<NativeMeasure> find_native(std::string_view id) {
  for (const auto& e : kNatives) {
    if (e.id == id) return e.fns;
  }
  return std::nullopt;
}

}  // namespace rca
