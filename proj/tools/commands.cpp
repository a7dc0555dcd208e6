// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <vector>

#include "latham/eigensolver.hpp"
#include "output.hpp"

namespace latham::cli {

namespace {

double seconds_of(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

// median of repeated timings; repetition count backs off for long runs
double timed_median(const std::function<void()>& fn) {
    std::vector<double> t;
    t.push_back(seconds_of(fn));
    const int reps = t[0] > 10.0 ? 1 : t[0] > 1.0 ? 3 : 5;
    for (int i = 1; i < reps; ++i) t.push_back(seconds_of(fn));
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct CorePencil {
    AssembledOperator H;  // 1/2 laplace - nuclear
    AssembledOperator S;
};

CorePencil assemble_core(const LatticeSystem& sys, bool periodic) {
    const auto assemble = periodic ? assemble_periodic : assemble_box;
    const AssembledOperator lap = assemble(sys, OperatorKind::Laplace);
    const AssembledOperator nuc = assemble(sys, OperatorKind::Nuclear);
    CorePencil p;
    p.H = combine(0.5, lap, -1.0, nuc);
    p.S = assemble(sys, OperatorKind::Mass);
    return p;
}

void write_spectrum_csv(const std::filesystem::path& out, const std::string& name,
                        const std::string& command, const ExperimentConfig& cfg,
                        const KPointSpectrum& spec) {
    OutputFile f(out, name, command, cfg);
    f << "k1,k2,k3,band,eigenvalue\n";
    for (Index j = 0; j < spec.k_count(); ++j) {
        const auto k = spec.k_multi(j);
        for (Index m = 0; m < spec.m0; ++m)
            f << k[0] << "," << k[1] << "," << k[2] << "," << m << ","
              << OutputFile::num(spec.eigenvalues[static_cast<size_t>(j)][m]) << "\n";
    }
    f.commit();
}

void write_box_spectrum_csv(const std::filesystem::path& out, const std::string& name,
                            const std::string& command, const ExperimentConfig& cfg,
                            const Eigen::VectorXd& ev) {
    // the box spectrum is not k-resolved; k columns carry -1 and `band`
    // numbers the ascending eigenvalues
    OutputFile f(out, name, command, cfg);
    f << "k1,k2,k3,band,eigenvalue\n";
    for (Index i = 0; i < ev.size(); ++i)
        f << "-1,-1,-1," << i << "," << OutputFile::num(ev[i]) << "\n";
    f.commit();
}

void write_bands_csv(const std::filesystem::path& out, const std::string& name,
                     const std::string& command, const ExperimentConfig& cfg,
                     const BandStructure& bands) {
    OutputFile f(out, name, command, cfg);
    f << "band,k_linear,eigenvalue\n";
    for (Index m = 0; m < bands.m0; ++m)
        for (Index j = 0; j < bands.bands[static_cast<size_t>(m)].size(); ++j)
            f << m << "," << j << ","
              << OutputFile::num(bands.bands[static_cast<size_t>(m)][j]) << "\n";
    f.commit();
}

/// Box bands: ascending spectrum cut into m0 chunks of PiL values each
/// (bands are separated by gaps for the localized bases used here).
BandStructure box_bands(const Eigen::VectorXd& sorted, Index m0, Index cells) {
    BandStructure bs;
    bs.m0 = m0;
    bs.band_min.resize(m0);
    bs.band_max.resize(m0);
    for (Index m = 0; m < m0; ++m) {
        bs.bands.push_back(sorted.segment(m * cells, cells));
        bs.band_min[m] = bs.bands.back().minCoeff();
        bs.band_max[m] = bs.bands.back().maxCoeff();
    }
    return bs;
}

void write_gnuplot_bands(const std::filesystem::path& out, const ExperimentConfig& cfg,
                         bool box, bool periodic) {
    OutputFile f(out, "bands.gp", "solve", cfg);
    f << "set datafile separator ','\n";
    f << "set xlabel 'k (linear index)'\n";
    f << "set ylabel 'eigenvalue'\n";
    f << "plot ";
    bool first = true;
    if (periodic) {
        f << "'bands_periodic.csv' using 2:3 with points title 'periodic'";
        first = false;
    }
    if (box) {
        if (!first) f << ", ";
        f << "'bands_box.csv' using 2:3 with points title 'box'";
    }
    f << "\n";
    f.commit();
}

}  // namespace

void cmd_kernel(const ExperimentConfig& cfg, const std::filesystem::path& out) {
    const SincQuadrature quad = build_sinc_quadrature(cfg.quad_M);
    const double h = cfg.b / static_cast<double>(cfg.n);

    CanonicalTensor3 lattice;
    const double assembly_seconds = seconds_of([&] {
        const auto grids = master_grids_box(cfg.n, h, cfg.L);
        const CanonicalTensor3 master = newton_master_tensor(grids, quad);
        lattice = lattice_potential_box(master, cfg.nuclei, cfg.L, cfg.n, h);
    });

    const Index rank_bound = cfg.nuclei.count() * quad.rank();
    double err_max = 0.0;
    OutputFile acc(out, "kernel_accuracy.csv", "kernel", cfg);
    acc << "z,quadrature,exact,rel_error\n";
    for (double z : {0.5, 0.75, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        const double v = quad.evaluate(z);
        const double rel = std::abs(v - 1.0 / z) * z;
        err_max = std::max(err_max, rel);
        acc << OutputFile::num(z) << "," << OutputFile::num(v) << ","
            << OutputFile::num(1.0 / z) << "," << OutputFile::num(rel) << "\n";
    }
    acc.commit();

    OutputFile rep(out, "kernel_report.csv", "kernel", cfg);
    rep << "M,R,rank,rank_bound,quad_rel_err_z1,quad_rel_err_max,assembly_seconds\n";
    rep << cfg.quad_M << "," << quad.rank() << "," << lattice.rank() << "," << rank_bound << ","
        << OutputFile::num(quad.relative_error(1.0)) << "," << OutputFile::num(err_max) << ","
        << OutputFile::num(assembly_seconds) << "\n";
    rep.commit();
}

void cmd_solve(const ExperimentConfig& cfg, const std::filesystem::path& out) {
    const LatticeSystem sys = cfg.system();
    const bool want_box = cfg.boundary != Boundary::Periodic;
    const bool want_per = cfg.boundary != Boundary::Box;

    Eigen::VectorXd box_sorted;
    KPointSpectrum per_spec;
    if (want_box) {
        const CorePencil p = assemble_core(sys, false);
        const DenseSpectrum ds =
            solve_box_dense(p.H.dense, p.S.dense, cfg.solve_eigenvectors, cfg.cap_dense);
        box_sorted = ds.eigenvalues;
        write_box_spectrum_csv(out, "spectrum_box.csv", "solve", cfg, box_sorted);
        write_bands_csv(out, "bands_box.csv", "solve", cfg,
                        box_bands(box_sorted, sys.m0(), sys.lattice_count()));
        if (cfg.solve_eigenvectors) {
            OutputFile f(out, "eigenvectors_box.csv", "solve", cfg);
            f << "index,component,value\n";
            for (Index c = 0; c < ds.eigenvectors.cols(); ++c)
                for (Index r = 0; r < ds.eigenvectors.rows(); ++r)
                    f << c << "," << r << "," << OutputFile::num(ds.eigenvectors(r, c)) << "\n";
            f.commit();
        }
    }
    if (want_per) {
        const CorePencil p = assemble_core(sys, true);
        per_spec = solve_periodic(p.H, p.S, cfg.solve_eigenvectors, cfg.threads);
        write_spectrum_csv(out, "spectrum_periodic.csv", "solve", cfg, per_spec);
        write_bands_csv(out, "bands_periodic.csv", "solve", cfg, spectral_bands(per_spec));
        if (cfg.solve_eigenvectors) {
            const Eigen::MatrixXcd U = reconstruct_eigenvectors(per_spec, cfg.cap_dense);
            OutputFile f(out, "eigenvectors_periodic.csv", "solve", cfg);
            f << "index,component,re,im\n";
            for (Index c = 0; c < U.cols(); ++c)
                for (Index r = 0; r < U.rows(); ++r)
                    f << c << "," << r << "," << OutputFile::num(U(r, c).real()) << ","
                      << OutputFile::num(U(r, c).imag()) << "\n";
            f.commit();
        }
    }
    if (want_box && want_per) {
        // defect norm (nuclear part) and bandwise spectral discrepancy record
        const DefectReport defect = box_circulant_defect(sys);
        const BandStructure pb = spectral_bands(per_spec);
        const BandStructure bb = box_bands(box_sorted, sys.m0(), sys.lattice_count());
        OutputFile f(out, "defect.csv", "solve", cfg);
        f << "L1,L2,L3,nuclear_defect_rel_fro,band,band_max_discrepancy\n";
        for (Index m = 0; m < sys.m0(); ++m) {
            Eigen::VectorXd a = pb.bands[static_cast<size_t>(m)];
            Eigen::VectorXd b = bb.bands[static_cast<size_t>(m)];
            std::sort(a.data(), a.data() + a.size());
            std::sort(b.data(), b.data() + b.size());
            const double disc = (a - b).cwiseAbs().maxCoeff();
            f << sys.L[0] << "," << sys.L[1] << "," << sys.L[2] << ","
              << OutputFile::num(defect.relative_fro) << "," << m << ","
              << OutputFile::num(disc) << "\n";
        }
        f.commit();
    }
    write_gnuplot_bands(out, cfg, want_box, want_per);
}

void cmd_bench(const ExperimentConfig& cfg, const std::filesystem::path& out) {
    if (cfg.bench_L.empty())
        throw ConfigError("bench: bench.L_list must list the lattice sizes to sweep");

    OutputFile f(out, "bench.csv", "bench", cfg);
    f << "Nb,path,seconds\n";
    std::vector<double> nb_dense, t_dense, nb_fft, t_fft;
    for (const Index L : cfg.bench_L) {
        const LatticeSystem sys = cfg.system({L, 1, 1});
        const Index Nb = sys.basis_count();

        const CorePencil per = assemble_core(sys, true);
        const double t_per = timed_median([&] {
            const KPointSpectrum s = solve_periodic(per.H, per.S, false, cfg.threads);
            (void)s;
        });
        f << Nb << ",fft," << OutputFile::num(t_per) << "\n";
        nb_fft.push_back(static_cast<double>(Nb));
        t_fft.push_back(t_per);

        if (Nb <= cfg.cap_dense) {
            const CorePencil box = assemble_core(sys, false);
            const double t_box = timed_median([&] {
                const DenseSpectrum s =
                    solve_box_dense(box.H.dense, box.S.dense, false, cfg.cap_dense);
                (void)s;
            });
            f << Nb << ",dense," << OutputFile::num(t_box) << "\n";
            nb_dense.push_back(static_cast<double>(Nb));
            t_dense.push_back(t_box);
        }
    }
    f.commit();

    OutputFile e(out, "bench_exponents.csv", "bench", cfg);
    e << "path,points,fitted_exponent\n";
    if (nb_dense.size() >= 2)
        e << "dense," << nb_dense.size() << ","
          << OutputFile::num(fit_loglog_slope(nb_dense, t_dense)) << "\n";
    if (nb_fft.size() >= 2)
        e << "fft," << nb_fft.size() << "," << OutputFile::num(fit_loglog_slope(nb_fft, t_fft))
          << "\n";
    e.commit();

    OutputFile g(out, "bench.gp", "bench", cfg);
    g << "set datafile separator ','\n";
    g << "set logscale xy\n";
    g << "set xlabel 'N_b'\nset ylabel 'seconds'\n";
    g << "plot '< grep dense bench.csv' using 1:3 with linespoints title 'dense', \\\n";
    g << "     '< grep fft bench.csv' using 1:3 with linespoints title 'fft'\n";
    g.commit();
}

void cmd_energy(const ExperimentConfig& cfg, const std::filesystem::path& out) {
    if (cfg.energy_L.empty())
        throw ConfigError("energy: energy.L_list must list the lattice sizes to sweep");
    const bool want_box = cfg.boundary != Boundary::Periodic;
    const bool want_per = cfg.boundary != Boundary::Box;

    OutputFile f(out, "energy.csv", "energy", cfg);
    f << "L1,L2,L3,boundary,E_per_cell\n";
    for (const Index L : cfg.energy_L) {
        const LatticeSystem sys = cfg.system({L, 1, 1});
        if (want_box) {
            const CorePencil p = assemble_core(sys, false);
            const DenseSpectrum ds = solve_box_dense(p.H.dense, p.S.dense, false, cfg.cap_dense);
            const double E =
                average_energy_per_cell(ds.eigenvalues, sys.lattice_count(), cfg.n_occ);
            f << L << ",1,1,box," << OutputFile::num(E) << "\n";
        }
        if (want_per) {
            const CorePencil p = assemble_core(sys, true);
            const KPointSpectrum spec = solve_periodic(p.H, p.S, false, cfg.threads);
            const double E =
                average_energy_per_cell(spec.sorted_all(), sys.lattice_count(), cfg.n_occ);
            f << L << ",1,1,periodic," << OutputFile::num(E) << "\n";
        }
    }
    f.commit();

    OutputFile g(out, "energy.gp", "energy", cfg);
    g << "set datafile separator ','\n";
    g << "set xlabel 'L'\nset ylabel 'E per cell'\n";
    g << "plot '< grep box energy.csv' using 1:5 with linespoints title 'box', \\\n";
    g << "     '< grep periodic energy.csv' using 1:5 with linespoints title 'periodic'\n";
    g.commit();
}

}  // namespace latham::cli
