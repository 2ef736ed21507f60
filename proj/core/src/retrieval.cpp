#include "pkt/retrieval.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pkt/kernel.hpp"
#include "pkt/log.hpp"

namespace pkt {

RetrievalIndex::RetrievalIndex(FeatureMatrix db_feats, std::vector<int> db_labels)
    : feats_(std::move(db_feats)), labels_(std::move(db_labels)) {
  validate_features(feats_, 1, "retrieval database");
  if (static_cast<Eigen::Index>(labels_.size()) != feats_.rows()) {
    throw std::invalid_argument("retrieval database: " + std::to_string(feats_.rows()) +
                                " rows but " + std::to_string(labels_.size()) + " labels");
  }
}

std::vector<std::size_t> rank(const RetrievalIndex& index, std::span<const double> query) {
  const auto& db = index.features();
  if (static_cast<Eigen::Index>(query.size()) != db.cols()) {
    throw std::invalid_argument("rank: query dimension does not match database");
  }
  std::vector<double> sim(index.size());
  for (std::size_t i = 0; i < sim.size(); ++i) {
    sim[i] = cosine_similarity(row_span(db, static_cast<Eigen::Index>(i)), query);
  }
  std::vector<std::size_t> order(index.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sim[a] > sim[b]; });
  return order;
}

double average_precision_11pt(const std::vector<bool>& ranked_relevance,
                              std::size_t n_relevant_total) {
  if (n_relevant_total == 0) {
    throw std::invalid_argument("average_precision_11pt: no relevant items");
  }
  const std::size_t hits_total =
      static_cast<std::size_t>(std::count(ranked_relevance.begin(), ranked_relevance.end(), true));
  if (hits_total > n_relevant_total) {
    throw std::invalid_argument("average_precision_11pt: more hits than relevant items");
  }

  // best[level] = max precision over cutoffs whose recall >= level/10. Recall
  // comparisons stay in integers: hits/total >= level/10 <=> 10 hits >= level total.
  double best[11] = {};
  std::size_t hits = 0;
  for (std::size_t k = 0; k < ranked_relevance.size(); ++k) {
    if (ranked_relevance[k]) ++hits;
    const double precision = static_cast<double>(hits) / static_cast<double>(k + 1);
    for (std::size_t level = 0; level <= 10; ++level) {
      if (10 * hits >= level * n_relevant_total) best[level] = std::max(best[level], precision);
    }
  }
  double sum = 0.0;
  for (double b : best) sum += b;
  return sum / 11.0;
}

double top_k_precision(const std::vector<bool>& ranked_relevance, std::size_t k) {
  if (k < 1 || k > ranked_relevance.size()) {
    throw std::invalid_argument("top_k_precision: k=" + std::to_string(k) +
                                " outside [1, " + std::to_string(ranked_relevance.size()) + "]");
  }
  const auto hits = std::count(ranked_relevance.begin(),
                               ranked_relevance.begin() + static_cast<std::ptrdiff_t>(k), true);
  return static_cast<double>(hits) / static_cast<double>(k);
}

RetrievalResult evaluate(const RetrievalIndex& index, const FeatureMatrix& queries,
                         std::span<const int> query_labels, std::span<const std::size_t> ks) {
  if (queries.rows() == 0) throw std::invalid_argument("evaluate: empty query set");
  validate_features(queries, 1, "evaluate queries");
  if (static_cast<Eigen::Index>(query_labels.size()) != queries.rows()) {
    throw std::invalid_argument("evaluate: query label count does not match queries");
  }
  if (queries.cols() != index.features().cols()) {
    throw std::invalid_argument("evaluate: query dimension does not match database");
  }
  for (std::size_t k : ks) {
    if (k < 1 || k > index.size()) {
      throw std::invalid_argument("evaluate: top-k " + std::to_string(k) +
                                  " outside [1, " + std::to_string(index.size()) + "]");
    }
  }

  const auto nq = static_cast<std::size_t>(queries.rows());
  std::vector<double> ap(nq, 0.0);
  std::vector<std::vector<double>> topk(nq, std::vector<double>(ks.size(), 0.0));
  std::vector<bool> used(nq, false);

  for (std::size_t q = 0; q < nq; ++q) {
    const int label = query_labels[q];
    const auto n_rel = static_cast<std::size_t>(
        std::count(index.labels().begin(), index.labels().end(), label));
    if (n_rel == 0) continue;
    const auto order = rank(index, row_span(queries, static_cast<Eigen::Index>(q)));
    std::vector<bool> rel(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) rel[i] = index.labels()[order[i]] == label;
    ap[q] = average_precision_11pt(rel, n_rel);
    for (std::size_t k = 0; k < ks.size(); ++k) topk[q][k] = top_k_precision(rel, ks[k]);
    used[q] = true;
  }

  RetrievalResult result;
  std::vector<double> topk_sum(ks.size(), 0.0);
  for (std::size_t q = 0; q < nq; ++q) {
    if (!used[q]) {
      ++result.skipped_queries;
      continue;
    }
    result.per_query_ap.push_back(ap[q]);
    result.evaluated_queries.push_back(q);
    for (std::size_t k = 0; k < ks.size(); ++k) topk_sum[k] += topk[q][k];
  }

  const std::size_t n_eval = result.per_query_ap.size();
  if (n_eval == 0) {
    log::error("evaluate: all " + std::to_string(nq) +
               " queries skipped (no relevant database items)");
    for (std::size_t k : ks) result.top_k[k] = 0.0;
    return result;
  }
  if (result.skipped_queries > 0) {
    log::info("evaluate: skipped " + std::to_string(result.skipped_queries) +
              " queries with no relevant database items");
  }
  double sum = 0.0;
  for (double v : result.per_query_ap) sum += v;
  result.map = sum / static_cast<double>(n_eval);
  for (std::size_t k = 0; k < ks.size(); ++k) {
    result.top_k[ks[k]] = topk_sum[k] / static_cast<double>(n_eval);
  }
  return result;
}

}  // namespace pkt
