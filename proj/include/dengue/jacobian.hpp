#pragma once

#include "dengue/model.hpp"

namespace dengue {

// Analytic Jacobian of rhs with respect to the reduced state.
inline Matrix<kDim, kDim> jacobian(const ModelParams& p, ControlLevel control, const State7& s)
{
    require_finite(s, "jacobian");
    const double c = control.value();
    const double N = p.N_h();
    const double bite_h = p.B() * p.beta_mh() / N;
    const double bite_m = p.B() * p.beta_hm() / N;
    const double adults = s.S_m() + s.E_m() + s.I_m();
    const double room = 1.0 - s.A_m() / p.K();

    Matrix<kDim, kDim> J;
    J(kSh, kSh) = -(bite_h * s.I_m() + p.mu_h());
    J(kSh, kIm) = -bite_h * s.S_h();

    J(kEh, kSh) = bite_h * s.I_m();
    J(kEh, kEh) = -(p.nu_h() + p.mu_h());
    J(kEh, kIm) = bite_h * s.S_h();

    J(kIh, kEh) = p.nu_h();
    J(kIh, kIh) = -(p.eta_h() + p.mu_h());

    J(kAm, kAm) = -p.mu_b() * adults / p.K() - (p.eta_A() + p.mu_A());
    J(kAm, kSm) = p.mu_b() * room;
    J(kAm, kEm) = p.mu_b() * room;
    J(kAm, kIm) = p.mu_b() * room;

    J(kSm, kIh) = -bite_m * s.S_m();
    J(kSm, kAm) = p.eta_A();
    J(kSm, kSm) = -(bite_m * s.I_h() + p.mu_m() + c);

    J(kEm, kIh) = bite_m * s.S_m();
    J(kEm, kSm) = bite_m * s.I_h();
    J(kEm, kEm) = -(p.mu_m() + p.eta_m() + c);

    J(kIm, kEm) = p.eta_m();
    J(kIm, kIm) = -(p.mu_m() + c);
    return J;
}

}  // namespace dengue
