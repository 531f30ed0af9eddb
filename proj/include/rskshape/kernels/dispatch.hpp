#pragma once

namespace rsk::kernels {

enum class Isa { scalar, avx2 };

// ISA selected at startup: AVX2 when the CPU supports it and the library was
// built with the AVX2 translation units, scalar otherwise. The environment
// variable RSKSHAPE_ISA=scalar|avx2 overrides detection.
Isa active_isa();

// Test hook. Throws std::invalid_argument when asking for an ISA that is not
// available on this machine/build.
void force_isa(Isa isa);

bool avx2_available();
const char* isa_name(Isa isa);

}  // namespace rsk::kernels
