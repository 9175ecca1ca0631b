#pragma once

#include <string>
#include <variant>

#include "adlex/knn.hpp"
#include "adlex/naive_bayes.hpp"
#include "adlex/svm.hpp"
#include "adlex/tree.hpp"

namespace adlex {

using AnyModel = std::variant<LinearModel, NBModel, KnnModel, TreeModel, ForestModel>;

// Real-valued decision score, commercial = positive, for every model kind.
double decision_score(const AnyModel& model, const DocVector& x);

// commercial iff score > 0; ties go to editorial.
Label predict(const AnyModel& model, const DocVector& x);
inline Label predict_from_score(double score) { return score > 0.0 ? Label::commercial : Label::editorial; }

const char* model_kind_name(const AnyModel& model);

// JSON export: {"kind", "vocab_hash", "params", and per-kind payload;
// linear weights as sparse [index, value] pairs}.
std::string model_to_json(const AnyModel& model, std::uint64_t vocab_hash);

}  // namespace adlex
