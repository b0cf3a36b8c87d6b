#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tmsr/shots.h"

namespace tmsr {

/// CSV layout:
///   # <preamble lines, verbatim>
///   # tmsr-shots seed=<u64> cell=<u64> r=<g> nbar_in=<g> theta=<g> n_sys_a=<g> n_sys_b=<g> shots_per_state=<u64>
///   label,I_a,Q_a,I_b,Q_b
///   g,<I_a>,<Q_a>,<I_b>,<Q_b>
/// Doubles use the shortest round-trip representation, so read_csv(write_csv(x)) == x.
void write_shots_csv(std::ostream &out, const ShotSet &set, const std::vector<std::string> &preamble = {});
ShotSet read_shots_csv(std::istream &in);

/// Little-endian binary layout: magic "TMSRSHT1", the header fields in
/// declaration order (u64 or f64), a u64 record count, then per record one
/// label byte (0 = g, 1 = e) followed by four f64 quadratures.
void write_shots_binary(std::ostream &out, const ShotSet &set);
ShotSet read_shots_binary(std::istream &in);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace tmsr
