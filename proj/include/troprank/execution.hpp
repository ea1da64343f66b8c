#ifndef TROPRANK_EXECUTION_HPP
#define TROPRANK_EXECUTION_HPP

namespace troprank {

// Search loops (ordering enumeration, start pairs, corpus evaluation) run
// OpenMP-parallel by default; the serial path is kept as a reference and is
// asserted equal in the tests. Results are reduction-based and do not depend
// on the thread count.
enum class Exec { Serial, Parallel };

}  // namespace troprank

#endif
