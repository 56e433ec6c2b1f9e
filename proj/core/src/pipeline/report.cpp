#include "coshare/pipeline/report.hpp"

#include "coshare/common/error.hpp"
#include "coshare/narrative/assemble.hpp"
#include "coshare/stats/paired.hpp"

namespace coshare::pipeline {

TestRow paired_library_test(const library::NarrativeLibrary& lib, std::span<const library::ArticleLabels> articles,
                            const std::string& outlet_class, stats::Alternative alternative,
                            stats::ZeroPolicy zero_policy) {
  TestRow row;
  row.outlet_class = outlet_class;
  row.library = std::string(library::to_string(lib.name));
  row.dimensionality = narrative::to_string(lib.dimensionality);
  row.n_labels = lib.size();
  row.alternative = std::string(stats::to_string(alternative));
  row.zero_policy = std::string(stats::to_string(zero_policy));

  stats::LabelCounts coshared;
  stats::LabelCounts control;
  for (const auto& a : articles) {
    const bool cs = a.group == library::ArticleGroup::coshared;
    (cs ? row.n_coshared_articles : row.n_control_articles)++;
    auto& counts = cs ? coshared : control;
    for (const auto& label : lib.dimensionality == narrative::Dimensionality::low ? a.low : a.high) ++counts[label];
  }

  auto insufficient = [&](std::string reason) {
    row.status = std::string(kInsufficientData);
    row.reason = std::move(reason);
    return row;
  };
  if (row.n_coshared_articles == 0) return insufficient("no co-shared articles");
  if (row.n_control_articles == 0) return insufficient("no control articles");
  if (lib.size() == 0) return insufficient("empty library");

  const auto paired = stats::build_paired_vectors(lib, coshared, control);
  try {
    const auto r = stats::wilcoxon_signed_rank(paired.l_cs, paired.l_co, alternative, zero_policy);
    row.status = "ok";
    row.n_effective = r.n_effective;
    row.statistic = r.statistic;
    row.p_value = r.p_value;
    row.effect_size = r.effect_size;
    row.estimate = r.estimate;
    row.ci = std::pair{r.ci_low, r.ci_high};
    row.method = std::string(stats::to_string(r.method));
  } catch (const InsufficientDataError& e) {
    return insufficient(e.what());
  }
  return row;
}

}  // namespace coshare::pipeline
