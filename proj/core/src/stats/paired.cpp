#include "coshare/stats/paired.hpp"

namespace coshare::stats {

namespace {

double total_of(const LabelCounts& c) {
  double t = 0.0;
  for (const auto& [label, n] : c) t += static_cast<double>(n);
  return t;
}

}  // namespace

PairedSample build_paired_vectors(const library::NarrativeLibrary& library, const LabelCounts& coshared,
                                  const LabelCounts& control) {
  PairedSample out;
  const double cs_total = total_of(coshared);
  const double co_total = total_of(control);
  for (const auto& [label, freq] : library.entries) {
    out.labels.push_back(label);
    auto share = [&](const LabelCounts& c, double total) {
      auto it = c.find(label);
      return it == c.end() || total == 0.0 ? 0.0 : static_cast<double>(it->second) / total;
    };
    out.l_cs.push_back(share(coshared, cs_total));
    out.l_co.push_back(share(control, co_total));
  }
  return out;
}

}  // namespace coshare::stats
