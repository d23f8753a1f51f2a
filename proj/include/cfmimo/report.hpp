// SPDX-License-Identifier: Apache-2.0
//
// cfmimo: sequential uplink processing for cell-free massive MIMO with limited-memory APs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef cfmimo_report_H
#define cfmimo_report_H

#include "experiment.hpp"
#include "memory_model.hpp"
#include "types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace cfmimo
{

inline constexpr const char *csv_header =
    "scheme,memory_kind,capacity_bytes,L,N,K,F,trial,seed,sum_se_exact,sum_se_bound,per_user_exact,per_user_bound";

// Shortest-safe round-trip formatting (17 significant digits)
inline std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(const std::vector<TrialRecord> &records, std::ostream &os)
{
    os << csv_header << '\n';
    for (const auto &r : records)
    {
        os << to_string(r.scheme) << ',' << to_string(r.memory_kind) << ',' << format_real(r.capacity_bytes) << ','
           << r.L << ',' << r.N << ',' << r.K << ',' << r.F << ',' << r.trial << ',' << r.seed << ','
           << format_real(r.sum_se_exact) << ',' << format_real(r.sum_se_bound) << ','
           << format_real(r.per_user_exact) << ',' << format_real(r.per_user_bound) << '\n';
    }
}

inline std::string to_csv(const std::vector<TrialRecord> &records)
{
    std::ostringstream os;
    write_csv(records, os);
    return os.str();
}

inline void emit_csv(const std::vector<TrialRecord> &records, const std::string &path)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_csv(records, f);
    f.flush();
    if (!f)
        throw std::runtime_error("write to '" + path + "' failed");
}

inline std::vector<TrialRecord> parse_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || line != csv_header)
        throw std::runtime_error("unexpected CSV header");
    std::vector<TrialRecord> out;
    std::size_t lineno = 1;
    while (std::getline(is, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() != 13)
            throw std::runtime_error("CSV line " + std::to_string(lineno) + " has " + std::to_string(f.size()) +
                                     " fields");
        TrialRecord r;
        const auto scheme = parse_scheme(f[0]);
        const auto kind = parse_memory_kind(f[1]);
        if (!scheme || !kind)
            throw std::runtime_error("CSV line " + std::to_string(lineno) + ": bad scheme or memory kind");
        r.scheme = *scheme;
        r.memory_kind = *kind;
        r.capacity_bytes = std::stod(f[2]);
        r.L = std::stoull(f[3]);
        r.N = std::stoull(f[4]);
        r.K = std::stoull(f[5]);
        r.F = std::stoull(f[6]);
        r.trial = std::stoull(f[7]);
        r.seed = std::stoull(f[8]);
        r.sum_se_exact = std::stod(f[9]);
        r.sum_se_bound = std::stod(f[10]);
        r.per_user_exact = std::stod(f[11]);
        r.per_user_bound = std::stod(f[12]);
        out.push_back(r);
    }
    return out;
}

// One plotted curve: mean per-user SE (exact) per L for a (scheme, policy, capacity) group
struct CurveKey
{
    Scheme scheme;
    MemoryKind kind;
    double capacity_bytes;

    auto tie() const { return std::tuple(static_cast<int>(kind), capacity_bytes, static_cast<int>(scheme)); }
    bool operator<(const CurveKey &o) const { return tie() < o.tie(); }
};

struct CurvePoint
{
    std::size_t L = 0;
    double mean = 0.0;
    double std_error = 0.0; // sample standard deviation / sqrt(n)
    std::size_t count = 0;
};

inline std::string curve_label(const CurveKey &k)
{
    std::string s = std::string(to_string(k.kind));
    for (auto &c : s)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (k.kind == MemoryKind::infinite)
        return "Infinite memory, " + std::string(to_string(k.scheme));
    const double kb = k.capacity_bytes / kibibyte;
    char buf[64];
    if (kb >= 1024.0)
        std::snprintf(buf, sizeof buf, "%gMB", kb / 1024.0);
    else
        std::snprintf(buf, sizeof buf, "%gKB", kb);
    std::string scheme(to_string(k.scheme));
    for (auto &c : scheme)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s + ", " + scheme + ", " + buf;
}

inline std::map<CurveKey, std::vector<CurvePoint>> curve_means(const std::vector<TrialRecord> &records)
{
    std::map<CurveKey, std::map<std::size_t, std::vector<double>>> samples;
    for (const auto &r : records)
        samples[CurveKey{r.scheme, r.memory_kind, r.capacity_bytes}][r.L].push_back(r.per_user_exact);

    std::map<CurveKey, std::vector<CurvePoint>> out;
    for (const auto &[key, by_l] : samples)
    {
        auto &curve = out[key];
        for (const auto &[L, v] : by_l)
        {
            CurvePoint pt;
            pt.L = L;
            pt.count = v.size();
            double sum = 0.0;
            for (double x : v)
                sum += x;
            pt.mean = sum / static_cast<double>(v.size());
            if (v.size() > 1)
            {
                double ss = 0.0;
                for (double x : v)
                    ss += (x - pt.mean) * (x - pt.mean);
                pt.std_error = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
            }
            curve.push_back(pt);
        }
    }
    return out;
}

// Self-contained SVG: x = L on a log2 axis, y = mean per-user SE, one polyline per curve.
inline std::string render_svg(const std::vector<TrialRecord> &records)
{
    if (records.empty())
        throw std::invalid_argument("cannot plot an empty record set");
    for (const auto &r : records)
        if (r.K != records.front().K)
            throw std::invalid_argument("records with different K cannot share one plot");

    const auto curves = curve_means(records);
    std::size_t l_min = records.front().L, l_max = records.front().L;
    double y_min = curves.begin()->second.front().mean, y_max = y_min;
    for (const auto &[key, pts] : curves)
        for (const auto &p : pts)
        {
            l_min = std::min(l_min, p.L);
            l_max = std::max(l_max, p.L);
            y_min = std::min(y_min, p.mean);
            y_max = std::max(y_max, p.mean);
        }
    y_min = std::floor(y_min);
    y_max = std::ceil(y_max);
    if (y_max - y_min < 1.0)
        y_max = y_min + 1.0;

    const double W = 760, Hgt = 460, left = 70, right = 250, top = 30, bottom = 60;
    const double pw = W - left - right, ph = Hgt - top - bottom;
    const double lx0 = std::log2(static_cast<double>(l_min));
    const double lx1 = std::log2(static_cast<double>(l_max));
    auto xpos = [&](std::size_t L) {
        if (lx1 == lx0)
            return left + pw / 2.0;
        return left + pw * (std::log2(static_cast<double>(L)) - lx0) / (lx1 - lx0);
    };
    auto ypos = [&](double v) { return top + ph * (1.0 - (v - y_min) / (y_max - y_min)); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };

    static const char *palette[] = {"#00b7eb", "#000000", "#d62728", "#1f77b4", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << Hgt
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << Hgt << "\" fill=\"white\"/>\n";

    // grid and ticks
    for (std::size_t L = 1; L <= l_max; L *= 2)
    {
        if (L < l_min)
            continue;
        const double x = xpos(L);
        s << "<line x1=\"" << num(x) << "\" y1=\"" << top << "\" x2=\"" << num(x) << "\" y2=\"" << top + ph
          << "\" stroke=\"#dddddd\"/>\n";
        s << "<text x=\"" << num(x) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">L=" << L
          << "</text>\n";
    }
    const int y_steps = static_cast<int>(std::lround(y_max - y_min));
    const double y_step = y_steps > 10 ? std::ceil((y_max - y_min) / 10.0) : 1.0;
    for (double v = y_min; v <= y_max + 1e-9; v += y_step)
    {
        const double y = ypos(v);
        s << "<line x1=\"" << left << "\" y1=\"" << num(y) << "\" x2=\"" << left + pw << "\" y2=\"" << num(y)
          << "\" stroke=\"#dddddd\"/>\n";
        s << "<text x=\"" << left - 8 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << v << "</text>\n";
    }
    s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    s << "<text x=\"" << left + pw / 2 << "\" y=\"" << Hgt - 15 << "\" text-anchor=\"middle\">Number of APs</text>\n";
    s << "<text transform=\"translate(18," << top + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">Average per-user SE (bit/s/Hz)</text>\n";

    std::size_t idx = 0;
    for (const auto &[key, pts] : curves)
    {
        const char *color = palette[idx % (sizeof palette / sizeof *palette)];
        const char *dash = key.scheme == Scheme::ec ? " stroke-dasharray=\"6,3\"" : "";
        s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << dash << " points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            s << (i ? " " : "") << num(xpos(pts[i].L)) << ',' << num(ypos(pts[i].mean));
        s << "\"/>\n";
        for (const auto &p : pts)
            s << "<circle cx=\"" << num(xpos(p.L)) << "\" cy=\"" << num(ypos(p.mean)) << "\" r=\"3\" fill=\"" << color
              << "\"/>\n";

        const double ly = top + 10 + 20.0 * static_cast<double>(idx);
        s << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 45 << "\" y2=\"" << ly
          << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << dash << "/>\n";
        s << "<text x=\"" << left + pw + 52 << "\" y=\"" << ly + 4 << "\">" << curve_label(key) << "</text>\n";
        ++idx;
    }
    s << "</svg>\n";
    return s.str();
}

inline void emit_plot(const std::vector<TrialRecord> &records, const std::string &path)
{
    const std::string svg = render_svg(records);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    f << svg;
    if (!f)
        throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace cfmimo

#endif
