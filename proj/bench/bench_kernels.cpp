// micro-benchmark: OpenMP kernels vs their serial reference twins
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "ddg/anticonc.hpp"
#include "ddg/fraction.hpp"
#include "ddg/graph.hpp"
#include "ddg/oracle.hpp"
#include "ddg/pipeline.hpp"

using namespace ddg;
using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
    int n = argc > 1 ? std::stoi(argv[1]) : 2048;
    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial ms", "openmp ms", "speedup");

    {
        Graph g = gen_erdos_renyi(n, 0.5, 1);
        Fraction d{1, 5};
        auto t0 = Clock::now();
        Graph a = pipeline::build_conflict_graph_serial(g, d);
        double ts = ms_since(t0);
        t0 = Clock::now();
        Graph b = pipeline::build_conflict_graph(g, d);
        double tp = ms_since(t0);
        if (a.edge_count() != b.edge_count()) {
            std::printf("conflict graph MISMATCH\n");
            return 1;
        }
        std::printf("%-28s %12.1f %12.1f %8.2f\n", "conflict graph", ts, tp, ts / tp);
    }
    {
        Graph g = gen_erdos_renyi(21, 0.5, 2);
        auto t0 = Clock::now();
        auto a = oracle::exact_f_serial(g);
        double ts = ms_since(t0);
        t0 = Clock::now();
        auto b = oracle::exact_f(g);
        double tp = ms_since(t0);
        if (a.distinct_count != b.distinct_count) {
            std::printf("exact f MISMATCH\n");
            return 1;
        }
        std::printf("%-28s %12.1f %12.1f %8.2f\n", "exact f (21 vertices)", ts, tp, ts / tp);
    }
    {
        std::vector<double> w(40, 1.0), p(40, 0.5);
        int64_t trials = 4'000'000;
        auto t0 = Clock::now();
        auto a = anticonc::atom_probability_mc_serial(w, p, trials, 7);
        double ts = ms_since(t0);
        t0 = Clock::now();
        auto b = anticonc::atom_probability_mc(w, p, trials, 7);
        double tp = ms_since(t0);
        if (a.pmax != b.pmax) {
            std::printf("atom MC MISMATCH (%.17g vs %.17g)\n", a.pmax, b.pmax);
            return 1;
        }
        std::printf("%-28s %12.1f %12.1f %8.2f\n", "atom probability MC", ts, tp, ts / tp);
    }
    return 0;
}
