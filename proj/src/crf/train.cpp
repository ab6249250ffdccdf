#include "exmine/crf/train.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <string>

#include "exmine/crf/objective.hpp"

namespace exmine {
namespace {

double l1_norm(const std::vector<double>& w) {
  double s = 0.0;
  for (double x : w) s += std::fabs(x);
  return s;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Pseudo-gradient of f(w) + l1*||w||_1: the subgradient of least magnitude
// per coordinate; zero exactly where no descent is possible.
std::vector<double> pseudo_gradient(const std::vector<double>& w,
                                    const std::vector<double>& grad, double l1) {
  if (l1 == 0.0) return grad;
  std::vector<double> pg(w.size());
  for (size_t k = 0; k < w.size(); ++k) {
    if (w[k] > 0) {
      pg[k] = grad[k] + l1;
    } else if (w[k] < 0) {
      pg[k] = grad[k] - l1;
    } else if (grad[k] + l1 < 0) {
      pg[k] = grad[k] + l1;
    } else if (grad[k] - l1 > 0) {
      pg[k] = grad[k] - l1;
    } else {
      pg[k] = 0.0;
    }
  }
  return pg;
}

struct Pair {
  std::vector<double> s, y;
  double rho;
};

// Two-loop recursion: d = -H * pg with H from the stored (s, y) pairs.
std::vector<double> lbfgs_direction(const std::vector<double>& pg, const std::deque<Pair>& history) {
  std::vector<double> q = pg;
  std::vector<double> a(history.size());
  for (size_t i = history.size(); i-- > 0;) {
    a[i] = history[i].rho * dot(history[i].s, q);
    for (size_t k = 0; k < q.size(); ++k) q[k] -= a[i] * history[i].y[k];
  }
  if (!history.empty()) {
    const Pair& last = history.back();
    double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& x : q) x *= gamma;
  }
  for (size_t i = 0; i < history.size(); ++i) {
    double b = history[i].rho * dot(history[i].y, q);
    for (size_t k = 0; k < q.size(); ++k) q[k] += (a[i] - b) * history[i].s[k];
  }
  for (double& x : q) x = -x;
  return q;
}

class Optimizer {
 public:
  Optimizer(CrfModel& model, const std::vector<CompiledSequence>& batch, const TrainConfig& config,
            unsigned workers)
      : model_(model), batch_(batch), config_(config), workers_(workers) {}

  std::vector<double> run() {
    // Owned copy: evaluate() overwrites the model's vector with probe points,
    // so the current iterate must not alias it.
    std::vector<double> w = model_.weights();
    ObjectiveResult smooth = evaluate(w);
    double value = smooth.value + config_.l1 * l1_norm(w);
    std::vector<double> trace{value};

    std::deque<Pair> history;
    for (int iter = 0; iter < config_.max_iterations; ++iter) {
      std::vector<double> pg = pseudo_gradient(w, smooth.gradient, config_.l1);
      if (max_abs(pg) < config_.gradient_tolerance) break;

      std::vector<double> direction = lbfgs_direction(pg, history);
      constrain_direction(direction, pg);
      if (!try_line_search(w, smooth, value, direction, pg, iter == 0)) {
        if (history.empty()) break;
        // Quasi-Newton direction failed; fall back to steepest descent.
        history.clear();
        direction = lbfgs_direction(pg, history);
        constrain_direction(direction, pg);
        if (!try_line_search(w, smooth, value, direction, pg, true)) break;
      }

      // w/smooth/value now hold the accepted iterate; the last accepted step
      // is stashed in step_s_/step_y_.
      trace.push_back(value);
      double sy = dot(step_s_, step_y_);
      if (sy > 1e-10) {
        history.push_back({std::move(step_s_), std::move(step_y_), 1.0 / sy});
        if (history.size() > static_cast<size_t>(config_.history_size)) history.pop_front();
      }
    }
    return trace;
  }

 private:
  ObjectiveResult evaluate(const std::vector<double>& w) {
    model_.mutable_weights() = w;
    return smooth_objective(model_, batch_, config_.l2, workers_);
  }

  // Discard direction components that disagree with steepest descent so a
  // single step never leaves the chosen orthant's closure.
  void constrain_direction(std::vector<double>& d, const std::vector<double>& pg) const {
    if (config_.l1 == 0.0) return;
    for (size_t k = 0; k < d.size(); ++k) {
      if (d[k] * pg[k] >= 0) d[k] = 0.0;
    }
  }

  // Backtracking Armijo search along the orthant-projected path. On success,
  // updates w (and the model), smooth, and value in place.
  bool try_line_search(std::vector<double>& w, ObjectiveResult& smooth, double& value,
                       const std::vector<double>& direction, const std::vector<double>& pg,
                       bool first_iteration) {
    double dnorm = std::sqrt(dot(direction, direction));
    if (dnorm == 0.0) return false;
    double alpha = first_iteration ? std::min(1.0, 1.0 / dnorm) : 1.0;

    // Orthant signs: current sign, or the descent sign at zero coordinates.
    std::vector<double> orthant(w.size());
    if (config_.l1 != 0.0) {
      for (size_t k = 0; k < w.size(); ++k)
        orthant[k] = w[k] != 0.0 ? (w[k] > 0 ? 1.0 : -1.0) : (pg[k] > 0 ? -1.0 : 1.0);
    }

    constexpr double kArmijo = 1e-4;
    std::vector<double> candidate(w.size());
    for (int halvings = 0; halvings < 60; ++halvings, alpha *= 0.5) {
      for (size_t k = 0; k < w.size(); ++k) {
        double x = w[k] + alpha * direction[k];
        if (config_.l1 != 0.0 && x * orthant[k] < 0) x = 0.0;
        candidate[k] = x;
      }
      ObjectiveResult cand_smooth = evaluate(candidate);
      double cand_value = cand_smooth.value + config_.l1 * l1_norm(candidate);

      double descent = 0.0;
      for (size_t k = 0; k < w.size(); ++k) descent += pg[k] * (candidate[k] - w[k]);
      if (descent >= 0) continue;
      if (cand_value <= value + kArmijo * descent) {
        step_s_.resize(w.size());
        step_y_.resize(w.size());
        for (size_t k = 0; k < w.size(); ++k) {
          step_s_[k] = candidate[k] - w[k];
          step_y_[k] = cand_smooth.gradient[k] - smooth.gradient[k];
        }
        w = candidate;
        model_.mutable_weights() = w;
        smooth = std::move(cand_smooth);
        value = cand_value;
        return true;
      }
    }
    model_.mutable_weights() = w;  // restore after failed probes
    return false;
  }

  CrfModel& model_;
  const std::vector<CompiledSequence>& batch_;
  const TrainConfig& config_;
  unsigned workers_;
  std::vector<double> step_s_, step_y_;
};

}  // namespace

CrfModel train(const std::vector<LabeledSequence>& corpus, const FeatureExtractor& extractor,
               const TrainConfig& config, unsigned workers) {
  if (corpus.empty()) throw ValidationError("empty corpus");
  if (config.l1 < 0 || config.l2 < 0) throw ValidationError("penalties must be non-negative");
  if (config.max_iterations < 1) throw ValidationError("max_iterations must be at least 1");

  std::vector<TokenSequence> sequences;
  sequences.reserve(corpus.size());
  std::set<std::string> tags_seen;
  for (const auto& s : corpus) {
    if (s.tokens.empty() || s.tokens.size() != s.tags.size())
      throw ValidationError("corpus sequence with mismatched tokens/tags");
    tags_seen.insert(s.tags.begin(), s.tags.end());
    sequences.push_back(extractor.make_sequence(s.tokens, s.tags));
  }

  std::vector<std::string> labels = LabelSet::default_labels();
  for (const auto& tag : tags_seen) {
    if (std::find(labels.begin(), labels.end(), tag) == labels.end()) labels.push_back(tag);
  }

  CrfModel model =
      CrfModel::create(LabelSet(labels), sequences, extractor.config(), config);

  std::vector<CompiledSequence> compiled;
  compiled.reserve(sequences.size());
  for (const auto& seq : sequences) compiled.push_back(model.compile(seq));

  try {
    Optimizer opt(model, compiled, config, workers);
    model.set_objective_trace(opt.run());
  } catch (const RuntimeFailure& e) {
    throw RuntimeFailure(std::string("training diverged: ") + e.what());
  }
  return model;
}

}  // namespace exmine
