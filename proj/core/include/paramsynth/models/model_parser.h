#pragma once

#include "paramsynth/models/model.h"

#include <string>
#include <string_view>

namespace paramsynth {

// Line-oriented format:
//   pmc|pmdp
//   parameters p q
//   states N init I
//   label <name> <state>...
//   transition <from> [<action>] <to> <expr>
//   reward <state> [<action>] <expr>
// '#' starts a comment. Parse errors carry line and column.
ParametricModel parseModel(std::string_view text);
ParametricModel loadModel(std::string const& path);

std::string printModel(ParametricModel const& model);

}  // namespace paramsynth
