// Copyright (c) 2026 The deprspeech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "deprspeech/eval/metrics.hpp"

#include "deprspeech/common/io.hpp"

namespace deprspeech::eval {

Label majority_vote(std::span<const Label> window_decisions) {
  if (window_decisions.empty())
    throw ValidationError("majority_vote: empty decision list");
  int64_t depressed = 0;
  for (const Label l : window_decisions)
    if (l == Label::kDepressed) ++depressed;
  const int64_t healthy = static_cast<int64_t>(window_decisions.size()) - depressed;
  return depressed >= healthy ? Label::kDepressed : Label::kHealthy;
}

ConfusionMatrix ConfusionMatrix::from(std::span<const Label> decisions,
                                      std::span<const Label> labels) {
  if (decisions.size() != labels.size())
    throw ValidationError("confusion matrix: " + std::to_string(decisions.size()) +
                          " decisions vs " + std::to_string(labels.size()) + " labels");
  if (decisions.empty())
    throw ValidationError("confusion matrix: empty inputs");
  ConfusionMatrix cm;
  for (size_t i = 0; i < decisions.size(); ++i) {
    const bool pred_dep = decisions[i] == Label::kDepressed;
    const bool is_dep = labels[i] == Label::kDepressed;
    if (pred_dep && is_dep) ++cm.tp;
    else if (pred_dep && !is_dep) ++cm.fp;
    else if (!pred_dep && is_dep) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

namespace {

double safe_div(double num, double den) { return den > 0.0 ? num / den : 0.0; }

double f1(double precision, double recall) {
  return (precision + recall) > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

}  // namespace

MetricReport metrics_from_confusion(const ConfusionMatrix& cm) {
  const double prec_d = safe_div(static_cast<double>(cm.tp),
                                 static_cast<double>(cm.tp + cm.fp));
  const double rec_d = safe_div(static_cast<double>(cm.tp),
                                static_cast<double>(cm.tp + cm.fn));
  const double prec_h = safe_div(static_cast<double>(cm.tn),
                                 static_cast<double>(cm.tn + cm.fn));
  const double rec_h = safe_div(static_cast<double>(cm.tn),
                                static_cast<double>(cm.tn + cm.fp));
  MetricReport report;
  report.f1_depressed = f1(prec_d, rec_d);
  report.f1_healthy = f1(prec_h, rec_h);
  // Balanced accuracy averages recalls over the classes that actually occur
  // (a single-class set scores its one class alone).
  double recall_sum = 0.0;
  int present = 0;
  if (cm.tp + cm.fn > 0) {
    recall_sum += rec_d;
    ++present;
  }
  if (cm.tn + cm.fp > 0) {
    recall_sum += rec_h;
    ++present;
  }
  report.weighted_accuracy = present > 0 ? recall_sum / present : 0.0;
  report.plain_accuracy = safe_div(static_cast<double>(cm.tp + cm.tn),
                                   static_cast<double>(cm.total()));
  report.n_recordings = cm.total();
  return report;
}

MetricReport compute_metrics(std::span<const Label> decisions,
                             std::span<const Label> labels) {
  return metrics_from_confusion(ConfusionMatrix::from(decisions, labels));
}

void write_metrics_csv(const MetricReport& report, const std::filesystem::path& path) {
  std::string out = "f1_d,f1_h,acc,plain_acc,n_recordings\n";
  out += format_real(report.f1_depressed);
  out += ',';
  out += format_real(report.f1_healthy);
  out += ',';
  out += format_real(report.weighted_accuracy);
  out += ',';
  out += format_real(report.plain_accuracy);
  out += ',';
  out += std::to_string(report.n_recordings);
  out += '\n';
  write_text_file(path, out);
}

}  // namespace deprspeech::eval
