#pragma once

#include <optional>
#include <string>

#include "qps/probabilistic.hpp"
#include "qps/rules.hpp"

namespace qps {

// A parsed system definition. The control table is present only when
// the file carried prob lines.
struct SystemFile {
    ProductionSystem system;
    std::optional<StochasticControl> control;
};

// Line-oriented grammar, one declaration per line, # starts a comment:
//   alphabet: abcde
//   rule 1: ba -> ab
//   initial: edcba            (comma-separated for several states)
//   goal: abcde               (comma-separated for several goals)
//   order: 2,1,3              (optional firing priority; default lowest id)
//   prob edcba: 1=0.5, 5=0.5  (optional, one line per condition)
// Structural problems raise ParseError with the line number; the result
// is validated (and the control checked against the rules) before it is
// returned.
SystemFile parse_system(const std::string& text);
SystemFile load_system(const std::string& path);

}  // namespace qps
