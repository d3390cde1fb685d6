#ifndef BIGACT_EXEC_HPP
#define BIGACT_EXEC_HPP

namespace bigact {

// Selects the OpenMP kernel or its serial reference. Both produce identical results.
enum class Exec { serial, parallel };

} // namespace bigact

#endif
