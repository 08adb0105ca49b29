#pragma once

namespace jastrow_dyn {

struct Units {
    double hbar = 1.0;
    double mass = 1.0;

    // Throws InvalidModel unless both are strictly positive and finite.
    void validate() const;
};

}  // namespace jastrow_dyn
