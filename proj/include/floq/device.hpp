// Chain geometry and static device parameters (couplings, anharmonicities,
// drive patterns). All frequencies are linear, in MHz; times are in ns.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace floq {

struct DeviceSpec {
    int n_sites = 0;
    int levels = 2;  // 2 (hard-core) or 3 (transmon with one leakage level)
    std::vector<double> nn_couplings;     // g_{j,j+1}/2pi, MHz, n_sites-1 entries
    std::vector<double> nnn_couplings;    // g_{j,j+2}/2pi, MHz, n_sites-2 entries
    std::vector<double> anharmonicities;  // U_j/2pi, MHz (negative), n_sites entries

    void validate() const;

    // First n sites of this device.
    DeviceSpec truncate(int n) const;

    // Copy with all NNN couplings zeroed.
    DeviceSpec without_nnn() const;

    bool has_nnn() const;

    // The 10-qubit device used throughout: measured NN/NNN couplings and
    // anharmonicities.
    static DeviceSpec paper_10q(int levels = 2);

    // Uniform open chain with NN coupling g (MHz) and no NNN coupling.
    static DeviceSpec uniform(int n, double g, int levels = 2);
};

// Per-site cosine drive, omega_j(t) = eps_j cos(nu t). A negative amplitude
// encodes a pi phase offset of the applied flux.
struct DrivePattern {
    std::vector<double> amplitudes;  // eps_j/2pi, signed MHz
    double drive_frequency = 120.0;  // nu/2pi, MHz

    void validate() const;

    bool is_zero() const;

    // Floquet period T = 2pi/nu in ns.
    double period_ns() const { return 1000.0 / drive_frequency; }

    static DrivePattern none(int n, double nu = 120.0);

    // Drive on odd sites (1-based: 1,3,5,...) with staggered phase:
    // eps_1, eps_5, eps_9 = +eps and eps_3, eps_7 = -eps.
    static DrivePattern staggered_odd(int n, double eps, double nu = 120.0);

    // Drive with amplitude eps on the given 1-based sites, zero elsewhere.
    static DrivePattern on_sites(int n, const std::vector<int>& sites, double eps,
                                 double nu = 120.0);
};

// Gate kinds that can be applied instantaneously between evolution segments.
enum class GateKind { X, Z, YHalfPi, SigmaX };

struct GateEvent {
    double time_ns = 0.0;
    int site = 0;  // 0-based
    GateKind kind = GateKind::X;
    double eta = 1.0;  // only used by SigmaX
};

// Piecewise drive schedule with instantaneous gates. Gates that share a time
// are applied in list order.
struct Schedule {
    struct Segment {
        double duration_ns;
        DrivePattern drive;
    };
    std::vector<Segment> segments;
    std::vector<GateEvent> gates;

    double total_span_ns() const;
    void validate() const;
};

}  // namespace floq
