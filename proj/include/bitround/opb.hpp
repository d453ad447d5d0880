// Copyright 2026 the bitround authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BITROUND_OPB_HPP_
#define BITROUND_OPB_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "bitround/model.hpp"

namespace bitround {

// Linear OPB subset: '*' comments, one optional "min:" objective, linear
// constraints with >=, =, or <= and a ';' terminator, one statement per line.
// Nonlinear products, objective constants, and WBO extensions are rejected
// with a FormatError carrying line and column. Header comments understood:
//   * #variable= N #constraint= M     (N is enforced, M is informational)
//   * name: <identifier>
//   * sense: max                      (objective line holds the negated c)
BinaryProgram parse_opb(std::istream& in);
BinaryProgram parse_opb(const std::string& text);

// Emits a program that re-parses equal to bp field-for-field. Maximization is
// written as minimization of -c plus the "* sense: max" marker; <= never
// appears (constraints are stored >= / =). extra_comments are emitted after
// the header, one '*' comment per entry, and are ignored on re-parse.
std::string write_opb(const BinaryProgram& bp,
                      const std::vector<std::string>& extra_comments = {});

}  // namespace bitround

#endif  // BITROUND_OPB_HPP_
