#include "ctxlab/error.hpp"

#include <cstdlib>
#include <string>

namespace ctxlab {

Limits Limits::from_environment()
{
    Limits l;
    const char* raw = std::getenv("CTXLAB_GUARDRAIL");
    if (!raw || !*raw)
        return l;
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(raw, &used);
        if (used == std::string(raw).size() && v > 0) {
            l.max_assignments = v;
            l.max_generated = v;
        }
    } catch (const std::exception&) {
    }
    return l;
}

}  // namespace ctxlab
