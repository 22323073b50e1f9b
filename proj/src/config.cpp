/* Definition of the process-wide truncation order for hbar power series. */
#include "qred/scalar.hpp"

namespace qred {

int& truncation_order_ref() {
    static int order = 3;
    return order;
}

}  // namespace qred
