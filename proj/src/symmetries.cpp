#include "npg2/symmetries.hpp"

namespace npg2 {

namespace {

constexpr TauMatrix kIdentity = {{{1, 0, 0, 0, 0},
                                  {0, 1, 0, 0, 0},
                                  {0, 0, 1, 0, 0},
                                  {0, 0, 0, 1, 0},
                                  {0, 0, 0, 0, 1}}};

// (f0,f1,f2,f3,f4) -> (-f0,f2,f1,f4,f3)
constexpr TauMatrix kT12 = {{{-1, 0, 0, 0, 0},
                             {0, 0, 1, 0, 0},
                             {0, 1, 0, 0, 0},
                             {0, 0, 0, 0, 1},
                             {0, 0, 0, 1, 0}}};

// (f0,f1,f2,f3,f4) -> (-f0, f1, -f1-f2-3(f3+f4), -f1-f3, f1+2f3+f4)
constexpr TauMatrix kT13 = {{{-1, 0, 0, 0, 0},
                             {0, 1, 0, 0, 0},
                             {0, -1, -1, -3, -3},
                             {0, -1, 0, -1, 0},
                             {0, 1, 0, 2, 1}}};

// (f0,f1,f2,f3,f4) -> (-f0, -f1-f2-3(f3+f4), f2, f2+f3+2f4, -f2-f4)
constexpr TauMatrix kT23 = {{{-1, 0, 0, 0, 0},
                             {0, -1, -1, -3, -3},
                             {0, 0, 1, 0, 0},
                             {0, 0, 1, 1, 2},
                             {0, 0, -1, 0, -1}}};

// (f0,f1,f2,f3,f4) -> (f0, -f1-f2-3(f3+f4), f1, f1+2f3+f4, -f1-f3)
constexpr TauMatrix kT123 = {{{1, 0, 0, 0, 0},
                              {0, -1, -1, -3, -3},
                              {0, 1, 0, 0, 0},
                              {0, 1, 0, 2, 1},
                              {0, -1, 0, -1, 0}}};

// (f0,f1,f2,f3,f4) -> (f0, f2, -f1-f2-3(f3+f4), -f2-f4, f2+f3+2f4)
constexpr TauMatrix kT132 = {{{1, 0, 0, 0, 0},
                              {0, 0, 1, 0, 0},
                              {0, -1, -1, -3, -3},
                              {0, 0, -1, 0, -1},
                              {0, 0, 1, 1, 2}}};

// tau_o: f~(t) = (-f0(-t), f1(-t), ..., f4(-t))
constexpr TauMatrix kReflect = {{{-1, 0, 0, 0, 0},
                                 {0, 1, 0, 0, 0},
                                 {0, 0, 1, 0, 0},
                                 {0, 0, 0, 1, 0},
                                 {0, 0, 0, 0, 1}}};

} // namespace

TauAction tau_action(Tau tau)
{
    switch (tau) {
    case Tau::identity: return {kIdentity, false};
    case Tau::o: return {kReflect, true};
    case Tau::t12: return {kT12, false};
    case Tau::t13: return {kT13, false};
    case Tau::t23: return {kT23, false};
    case Tau::t123: return {kT123, false};
    case Tau::t132: return {kT132, false};
    }
    return {kIdentity, false};
}

FCoeffs apply_tau(Tau tau, const FCoeffs& f)
{
    const TauMatrix m = tau_action(tau).m;
    FCoeffs out;
    for (int i = 0; i < 5; ++i) {
        double v = 0.0;
        for (int j = 0; j < 5; ++j)
            v += m[i][j] * f[j];
        out[i] = v;
    }
    return out;
}

TauAction compose(const TauAction& a, const TauAction& b)
{
    TauAction c;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            int v = 0;
            for (int k = 0; k < 5; ++k)
                v += a.m[i][k] * b.m[k][j];
            c.m[i][j] = v;
        }
    c.reflect_time = a.reflect_time != b.reflect_time;
    return c;
}

std::optional<Tau> identify(const TauAction& action)
{
    for (Tau tau : {Tau::identity, Tau::o, Tau::t12, Tau::t13, Tau::t23, Tau::t123, Tau::t132}) {
        const TauAction ref = tau_action(tau);
        if (ref.m == action.m && ref.reflect_time == action.reflect_time)
            return tau;
    }
    return std::nullopt;
}

const char* tau_name(Tau tau)
{
    switch (tau) {
    case Tau::identity: return "identity";
    case Tau::o: return "o";
    case Tau::t12: return "12";
    case Tau::t13: return "13";
    case Tau::t23: return "23";
    case Tau::t123: return "123";
    case Tau::t132: return "132";
    }
    return "identity";
}

std::optional<Tau> tau_from_name(const std::string& name)
{
    if (name == "identity" || name == "id")
        return Tau::identity;
    if (name == "o")
        return Tau::o;
    if (name == "12")
        return Tau::t12;
    if (name == "13")
        return Tau::t13;
    if (name == "23")
        return Tau::t23;
    if (name == "123")
        return Tau::t123;
    if (name == "132")
        return Tau::t132;
    return std::nullopt;
}

} // namespace npg2
