#pragma once

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace dengue {

// Every parallel kernel has a serial twin that performs the identical
// per-element arithmetic, so the two modes produce bit-identical results.
enum class ExecutionMode { Serial, Parallel };

inline int max_threads()
{
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline bool openmp_enabled()
{
#if defined(_OPENMP)
    return true;
#else
    return false;
#endif
}

} // namespace dengue
