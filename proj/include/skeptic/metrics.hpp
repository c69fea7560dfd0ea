#pragma once

#include "skeptic/logic_tree.hpp"
#include "skeptic/manifest.hpp"

namespace skeptic {

// Binary confusion counts; false_ai counts real samples predicted AI,
// false_real counts AI samples predicted real.
struct ConfusionCounts {
    long true_real = 0;
    long false_ai = 0;
    long true_ai = 0;
    long false_real = 0;

    void add(Label truth, Decision predicted);
    ConfusionCounts& merge(const ConfusionCounts& other);
    long total() const { return true_real + false_ai + true_ai + false_real; }
};

struct Metrics {
    double recall_real = 0.0;
    double recall_ai = 0.0;
    double accuracy_all = 0.0;
    double macro_f1 = 0.0;
};

// Per-class recalls, overall accuracy and macro F1 (mean of per-class F1,
// with every 0/0 ratio defined as 0). Pure and total.
Metrics compute_metrics(const ConfusionCounts& counts);

}  // namespace skeptic
