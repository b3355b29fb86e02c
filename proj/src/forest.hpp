#pragma once

#include <cstdint>
#include <vector>

#include "eegconn/matrix.hpp"

namespace eegconn::detail {

/// Trains a random forest on (X_train, y_train) and returns predicted class
/// ids for X_test. Tree t draws its bootstrap sample and split candidates
/// from seed_stream::kTree child seed t, so results do not depend on the
/// number of worker threads.
std::vector<int> random_forest_fit_predict(const Matrix& X_train, const std::vector<int>& y_train,
                                           const Matrix& X_test, int num_classes, int trees,
                                           bool bootstrap, std::uint64_t seed);

}  // namespace eegconn::detail
