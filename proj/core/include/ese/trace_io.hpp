#pragma once

#include <filesystem>

#include "ese/field.hpp"
#include "ese/integrate.hpp"

namespace ese {

/// Snapshot file: a short text header (dims, box, boundary, time) closed by
/// an `end` line, followed by the values as raw little-endian float64.
///
///   ESEFIELD 1
///   dim 2
///   extents 64 64
///   box -4 4 -4 4
///   boundary periodic
///   time 0.25
///   values 4096
///   end
void write_field(const std::filesystem::path& path, const Field& f, double t);

struct TimedField {
  Field f;
  double t;
};

TimedField read_field(const std::filesystem::path& path);

/// Writes trace.json (status and sample index), steps.csv (accepted dt) and
/// one snapshot per sample under `dir`.
void save_trace(const std::filesystem::path& dir, const SolveTrace& trace);

SolveTrace load_trace(const std::filesystem::path& dir);

}  // namespace ese
