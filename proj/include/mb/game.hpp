#pragma once

#include <string>

#include "vertex_set.hpp"

namespace mb {

enum class Player { maker, breaker };

inline const char* to_string(Player p) { return p == Player::maker ? "maker" : "breaker"; }
inline Player opponent(Player p) { return p == Player::maker ? Player::breaker : Player::maker; }

struct Move {
    Player player;
    VertexId vertex;
    friend bool operator==(const Move&, const Move&) = default;
};

}  // namespace mb
