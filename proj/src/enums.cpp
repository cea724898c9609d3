// SPDX-License-Identifier: Apache-2.0

#include <string>
#include <string_view>

#include "exactkrylov/krylov/block_lanczos.hpp"
#include "exactkrylov/lanczos/lanczos.hpp"

namespace exactkrylov {

std::string to_string(LanczosVariant v) { return v == LanczosVariant::mgs ? "mgs" : "cgs"; }

std::string to_string(Reorthogonalization r) {
    switch (r) {
        case Reorthogonalization::none:
            return "none";
        case Reorthogonalization::full:
            return "full";
        case Reorthogonalization::twice:
            return "double";
    }
    return "none";
}

LanczosVariant parse_lanczos_variant(std::string_view text) {
    if (text == "mgs") return LanczosVariant::mgs;
    if (text == "cgs") return LanczosVariant::cgs;
    throw PreconditionViolation("unknown Lanczos variant '" + std::string(text) + "' (expected mgs or cgs)");
}

Reorthogonalization parse_reorthogonalization(std::string_view text) {
    if (text == "none") return Reorthogonalization::none;
    if (text == "full") return Reorthogonalization::full;
    if (text == "double" || text == "twice") return Reorthogonalization::twice;
    throw PreconditionViolation("unknown reorthogonalization '" + std::string(text) +
                                "' (expected none, full or double)");
}

std::string to_string(GramSchmidt g) { return g == GramSchmidt::cgs ? "cgs" : "mgs"; }

GramSchmidt parse_gram_schmidt(std::string_view text) {
    if (text == "cgs") return GramSchmidt::cgs;
    if (text == "mgs") return GramSchmidt::mgs;
    throw PreconditionViolation("unknown QR variant '" + std::string(text) + "' (expected cgs or mgs)");
}

}  // namespace exactkrylov
