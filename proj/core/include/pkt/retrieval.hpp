#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "pkt/types.hpp"

namespace pkt {

class RetrievalIndex {
 public:
  RetrievalIndex(FeatureMatrix db_feats, std::vector<int> db_labels);

  const FeatureMatrix& features() const { return feats_; }
  const std::vector<int>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

 private:
  FeatureMatrix feats_;
  std::vector<int> labels_;
};

struct RetrievalResult {
  /// Mean of per_query_ap.
  double map = 0.0;
  std::map<std::size_t, double> top_k;
  /// One entry per evaluated query, in query order.
  std::vector<double> per_query_ap;
  std::vector<std::size_t> evaluated_queries;
  /// Queries with no relevant database item; excluded from the means.
  std::size_t skipped_queries = 0;
};

/// Database indices by descending cosine similarity to query; ties go to the
/// lower index.
std::vector<std::size_t> rank(const RetrievalIndex& index,
                              std::span<const double> query);

/// Interpolated average precision at recall 0.0, 0.1, ..., 1.0. Recall levels
/// never reached contribute zero precision.
double average_precision_11pt(const std::vector<bool>& ranked_relevance,
                              std::size_t n_relevant_total);

double top_k_precision(const std::vector<bool>& ranked_relevance, std::size_t k);

RetrievalResult evaluate(const RetrievalIndex& index, const FeatureMatrix& queries,
                         std::span<const int> query_labels,
                         std::span<const std::size_t> ks);

}  // namespace pkt
