#include "exmine/crf/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace exmine {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp(const double* v, size_t n) {
  double m = kNegInf;
  for (size_t i = 0; i < n; ++i) m = std::max(m, v[i]);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) s += std::exp(v[i] - m);
  return m + std::log(s);
}

}  // namespace

InferenceResult forward_backward(const std::vector<double>& node_scores,
                                 const std::vector<double>& trans_scores, size_t T, size_t L) {
  if (T == 0) throw ValidationError("empty sequence");

  std::vector<double> alpha(T * L), beta(T * L), scratch(L);

  for (size_t j = 0; j < L; ++j) alpha[j] = node_scores[j];
  for (size_t t = 1; t < T; ++t) {
    for (size_t j = 0; j < L; ++j) {
      for (size_t i = 0; i < L; ++i) scratch[i] = alpha[(t - 1) * L + i] + trans_scores[i * L + j];
      alpha[t * L + j] = logsumexp(scratch.data(), L) + node_scores[t * L + j];
    }
  }

  for (size_t j = 0; j < L; ++j) beta[(T - 1) * L + j] = 0.0;
  for (size_t t = T - 1; t-- > 0;) {
    for (size_t i = 0; i < L; ++i) {
      for (size_t j = 0; j < L; ++j)
        scratch[j] = trans_scores[i * L + j] + node_scores[(t + 1) * L + j] + beta[(t + 1) * L + j];
      beta[t * L + i] = logsumexp(scratch.data(), L);
    }
  }

  InferenceResult r;
  r.log_z = logsumexp(alpha.data() + (T - 1) * L, L);
  r.node_marginals.resize(T * L);
  for (size_t t = 0; t < T; ++t) {
    for (size_t j = 0; j < L; ++j)
      r.node_marginals[t * L + j] = std::exp(alpha[t * L + j] + beta[t * L + j] - r.log_z);
  }
  if (T > 1) {
    r.edge_marginals.resize((T - 1) * L * L);
    for (size_t t = 0; t + 1 < T; ++t) {
      for (size_t i = 0; i < L; ++i) {
        for (size_t j = 0; j < L; ++j) {
          r.edge_marginals[(t * L + i) * L + j] =
              std::exp(alpha[t * L + i] + trans_scores[i * L + j] + node_scores[(t + 1) * L + j] +
                       beta[(t + 1) * L + j] - r.log_z);
        }
      }
    }
  }
  return r;
}

InferenceResult log_partition_and_marginals(const CrfModel& model, const CompiledSequence& seq) {
  std::vector<double> ns, ts;
  model.node_scores(seq, ns);
  model.transition_scores(ts);
  return forward_backward(ns, ts, seq.length(), static_cast<size_t>(model.num_labels()));
}

InferenceResult log_partition_and_marginals(const CrfModel& model, const TokenSequence& seq) {
  return log_partition_and_marginals(model, model.compile(seq));
}

ViterbiResult viterbi_path(const std::vector<double>& node_scores,
                           const std::vector<double>& trans_scores, size_t T, size_t L) {
  if (T == 0) throw ValidationError("empty sequence");

  std::vector<double> delta(T * L);
  std::vector<int> backptr(T * L, 0);
  for (size_t j = 0; j < L; ++j) delta[j] = node_scores[j];
  for (size_t t = 1; t < T; ++t) {
    for (size_t j = 0; j < L; ++j) {
      double best = kNegInf;
      int arg = 0;
      for (size_t i = 0; i < L; ++i) {
        double v = delta[(t - 1) * L + i] + trans_scores[i * L + j];
        if (v > best) {
          best = v;
          arg = static_cast<int>(i);
        }
      }
      delta[t * L + j] = best + node_scores[t * L + j];
      backptr[t * L + j] = arg;
    }
  }

  size_t last = 0;
  for (size_t j = 1; j < L; ++j) {
    if (delta[(T - 1) * L + j] > delta[(T - 1) * L + last]) last = j;
  }

  ViterbiResult r;
  r.score = delta[(T - 1) * L + last];
  r.path.resize(T);
  r.path[T - 1] = static_cast<int>(last);
  for (size_t t = T - 1; t > 0; --t)
    r.path[t - 1] = backptr[t * L + static_cast<size_t>(r.path[t])];
  return r;
}

ViterbiResult viterbi(const CrfModel& model, const CompiledSequence& seq) {
  std::vector<double> ns, ts;
  model.node_scores(seq, ns);
  model.transition_scores(ts);
  return viterbi_path(ns, ts, seq.length(), static_cast<size_t>(model.num_labels()));
}

std::pair<std::vector<std::string>, double> viterbi_tags(const CrfModel& model,
                                                         const TokenSequence& seq) {
  ViterbiResult r = viterbi(model, model.compile(seq));
  std::vector<std::string> tags;
  tags.reserve(r.path.size());
  for (int idx : r.path) tags.push_back(model.labels().name(idx));
  return {std::move(tags), r.score};
}

double path_score(const std::vector<double>& node_scores, const std::vector<double>& trans_scores,
                  const std::vector<int>& path, size_t L) {
  double s = 0.0;
  for (size_t t = 0; t < path.size(); ++t) {
    s += node_scores[t * L + static_cast<size_t>(path[t])];
    if (t > 0)
      s += trans_scores[static_cast<size_t>(path[t - 1]) * L + static_cast<size_t>(path[t])];
  }
  return s;
}

namespace {

// "EXID" -> "ID", "EXNAME" -> "NAME"; other suffixes pass through.
std::string kind_from_suffix(const std::string& suffix) {
  if (suffix == "EXID") return "ID";
  if (suffix == "EXNAME") return "NAME";
  return suffix;
}

std::string join_tokens(const std::vector<std::string>& tokens, size_t b, size_t e) {
  std::string out;
  for (size_t i = b; i < e; ++i) {
    if (i > b) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

std::vector<DecodedEntity> decode_entities(const std::vector<std::string>& tokens,
                                           const std::vector<std::string>& tags) {
  if (tokens.size() != tags.size())
    throw ValidationError("token/tag count mismatch in entity decoding");

  std::vector<DecodedEntity> entities;
  std::string open_suffix;
  size_t open_begin = 0;
  auto close = [&](size_t end) {
    if (open_suffix.empty()) return;
    entities.push_back({kind_from_suffix(open_suffix), open_begin, end,
                        join_tokens(tokens, open_begin, end)});
    open_suffix.clear();
  };

  for (size_t t = 0; t < tags.size(); ++t) {
    const std::string& tag = tags[t];
    if (tag.size() > 2 && tag[1] == '-' && (tag[0] == 'B' || tag[0] == 'I')) {
      std::string suffix = tag.substr(2);
      if (tag[0] == 'B' || suffix != open_suffix) {
        close(t);
        open_suffix = suffix;
        open_begin = t;
      }
    } else {
      close(t);
    }
  }
  close(tags.size());
  return entities;
}

}  // namespace exmine
