#include "skeptic/metrics.hpp"

namespace skeptic {

namespace {

double ratio(double numerator, double denominator) {
    return denominator == 0.0 ? 0.0 : numerator / denominator;
}

double f1(double precision, double recall) {
    return ratio(2.0 * precision * recall, precision + recall);
}

}  // namespace

void ConfusionCounts::add(Label truth, Decision predicted) {
    if (truth == Label::Real) {
        predicted == Decision::Real ? ++true_real : ++false_ai;
    } else {
        predicted == Decision::AiGenerated ? ++true_ai : ++false_real;
    }
}

ConfusionCounts& ConfusionCounts::merge(const ConfusionCounts& other) {
    true_real += other.true_real;
    false_ai += other.false_ai;
    true_ai += other.true_ai;
    false_real += other.false_real;
    return *this;
}

Metrics compute_metrics(const ConfusionCounts& counts) {
    Metrics m;
    m.recall_real = ratio(counts.true_real, counts.true_real + counts.false_ai);
    m.recall_ai = ratio(counts.true_ai, counts.true_ai + counts.false_real);
    m.accuracy_all = ratio(counts.true_real + counts.true_ai, counts.total());
    const double precision_real = ratio(counts.true_real, counts.true_real + counts.false_real);
    const double precision_ai = ratio(counts.true_ai, counts.true_ai + counts.false_ai);
    m.macro_f1 = (f1(precision_real, m.recall_real) + f1(precision_ai, m.recall_ai)) / 2.0;
    return m;
}

}  // namespace skeptic
