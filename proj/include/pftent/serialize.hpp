#pragma once

#include <string>

#include <json.hpp>

#include "pftent/bounds.hpp"
#include "pftent/cocycle.hpp"
#include "pftent/driving.hpp"
#include "pftent/markov.hpp"
#include "pftent/step_function.hpp"

namespace pftent {

// {"breakpoints": [...], "values": [...]}
nlohmann::json step_function_to_json(const StepFunction<double>& f);
StepFunction<double> step_function_from_json(const nlohmann::json& j);
std::string step_function_csv_row(const StepFunction<double>& f);

// {"kind": "iid"|"periodic", "table": [[e1,e2,p?],...], "seed": u64, "kappa": x}
nlohmann::json driving_to_json(const DrivingStream& dr);
DrivingStream driving_from_json(const nlohmann::json& j);

nlohmann::json bound_report_to_json(const BoundReport& rep);
std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& rep, const AsymptoticBound* asym = nullptr);

nlohmann::json markov_model_to_json(const MarkovModel& m);
std::string markov_csv_header();
std::string markov_csv_row(const MarkovModel& m);

nlohmann::json spectrum_to_json(const SpectrumEstimate& est);

// Shortest round-trip decimal form, stable across runs.
std::string format_double(double x);

}  // namespace pftent
