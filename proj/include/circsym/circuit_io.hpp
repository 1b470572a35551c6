// Copyright 2026 The circsym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <string>
#include <string_view>

#include "circsym/circuit.hpp"

namespace circsym {

/// Line-oriented circuit text format.
///
///   # comment
///   qubits <data> [<ancillas>]
///   init q<i> zero|one|plus|minus
///   postselect q<i>=<0|1>
///   t=<k>; <gate>[(<p>,...)] q<i>[,q<j>...] [noise=<kind>,<rate>|noise=none]; ...
///
/// Moment lines must use t = 0, 1, 2, ... in order. A placement-level
/// noise=<kind>,<rate> replaces the run's noise model for that gate, with
/// `rate` read as the one-qubit rate for single-qubit gates and the
/// multi-qubit rate otherwise.
Circuit parse_circuit(std::string_view text);
Circuit load_circuit(const std::string &path);

/// Inverse of parse_circuit. Throws std::invalid_argument for placements
/// carrying an explicit Kraus channel or gates without a library name.
std::string dump_circuit(const Circuit &c);

}  // namespace circsym
