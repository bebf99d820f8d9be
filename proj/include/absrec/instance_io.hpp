#pragma once

#include <iosfwd>
#include <string>

#include "absrec/model.hpp"

namespace absrec {

/// Replayable problem: the raw operator matrix plus the generated instance.
/// The operator is stored as its matrix; derived data (dictionary, nullspace
/// basis) is recomputed on load.
struct StoredInstance {
  Matrix omega;
  CosparseInstance instance;
};

/// Versioned text container ("absrec-instance 1" magic line, row-major
/// matrices, shortest round-trip decimals). Loading reproduces every stored
/// value bit-exactly.
void write_instance(std::ostream& out, const Matrix& omega,
                    const CosparseInstance& inst);
void write_instance_file(const std::string& path, const Matrix& omega,
                         const CosparseInstance& inst);

/// Throws std::runtime_error on bad magic, version, or malformed content.
StoredInstance read_instance(std::istream& in);
StoredInstance read_instance_file(const std::string& path);

}  // namespace absrec
