#pragma once

#include <string>
#include <vector>

#include "eqloc/toric.hpp"

namespace eqloc {

// Built-in smooth complete fans, so checks run without external files:
// projective spaces, the quadric surface and the first two Hirzebruch
// surfaces.
inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {"p1", "p2", "p1xp1", "f1", "f2", "p3"};
    return names;
}

inline Fan corpus_fan(const std::string& name) {
    if (name == "p1") return Fan(1, {{1}, {-1}}, {{0}, {1}});
    if (name == "p2") return Fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}});
    if (name == "p1xp1")
        return Fan(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    if (name == "f1")
        return Fan(2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    if (name == "f2")
        return Fan(2, {{1, 0}, {0, 1}, {-1, 2}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    if (name == "p3")
        return Fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}},
                   {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    throw MalformedInput("unknown corpus fan: " + name);
}

}  // namespace eqloc
