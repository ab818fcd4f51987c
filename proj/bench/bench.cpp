// Benchmark: the non-normality sweep, parallel kernel vs serial reference.
// Prints timings and verifies the two produce identical records.  On a
// single-core host the interesting property is parity, not speedup.

#include "classify.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

using namespace octic;

namespace {

bool same(const SweepResult& a, const SweepResult& b) {
    if (a.records.size() != b.records.size() || a.survivors != b.survivors ||
        a.consistent != b.consistent)
        return false;
    for (size_t i = 0; i < a.records.size(); ++i) {
        const SweepRecord &ra = a.records[i], &rb = b.records[i];
        if (ra.triple != rb.triple || ra.oracle_nonnormal != rb.oracle_nonnormal ||
            ra.certificate_holds != rb.certificate_holds ||
            ra.exceptional != rb.exceptional)
            return false;
    }
    return true;
}

template <typename F>
double time_of(F&& f, SweepResult& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int depth = argc > 1 ? std::atoi(argv[1]) : 8;
    std::cout << "sweep depth " << depth << "\n";
    SweepResult par, ser;
    double tp = time_of([&] { return nonnormality_sweep(depth, true); }, par);
    double ts = time_of([&] { return nonnormality_sweep_serial(depth); }, ser);
    std::cout << "parallel kernel: " << tp << " s (" << par.records.size() << " records)\n";
    std::cout << "serial reference: " << ts << " s\n";
    if (!same(par, ser)) {
        std::cout << "MISMATCH: parallel and serial sweeps disagree\n";
        return 1;
    }
    std::cout << "results identical; survivors " << par.survivors.size()
              << ", consistent=" << (par.consistent ? "yes" : "no") << "\n";
    return 0;
}
