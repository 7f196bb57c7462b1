#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "becstat/presets.hpp"
#include "becstat/stats.hpp"
#include "becstat/three_mode.hpp"
#include "becstat/two_mode.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "svg.hpp"

namespace pr = becstat::presets;
namespace st = becstat::stats;
namespace twm = becstat::two_mode;
namespace thm = becstat::three_mode;

using cli_io::CliError;
using cli_io::csv_field;
using cli_io::g17;
using ojson = nlohmann::ordered_json;
using AnyCouplings = std::variant<twm::TwoModeCouplings, thm::ThreeModeCouplings>;

namespace {

struct Options {
  std::string model_text;
  std::string preset_name;
  std::int64_t n = -1;  // -1 means not given (sector sizes are nonnegative)
  std::string sectors_text;
  std::string input;
  int bins = 45;
  double discard_factor = 100.0;
  std::string out;
  std::string format = "csv";
  std::string svg_path;
  bool cross_sector = false;
  double h1_strength = 1.0;
  bool h1_given = false;
  bool json_listing = false;
  std::map<std::string, double> couplings;  // only flags the user actually passed
};

pr::Model parse_model_or_throw(const std::string& text) {
  if (text.empty())
    throw CliError(2, "--model is required (two_mode, three_mode, or three_mode_nonintegrable)");
  const auto m = pr::parse_model(text);
  if (!m)
    throw CliError(2, "unknown model: " + text +
                          " (expected two_mode, three_mode, or three_mode_nonintegrable)");
  return *m;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

AnyCouplings resolve_couplings(pr::Model model, const Options& o) {
  const bool two = (model == pr::Model::TwoMode);
  AnyCouplings out =
      two ? AnyCouplings(twm::TwoModeCouplings{}) : AnyCouplings(thm::ThreeModeCouplings{});
  if (!o.preset_name.empty()) {
    const auto* p = pr::find_preset(o.preset_name);
    if (!p)
      throw CliError(2, "unknown preset: " + o.preset_name +
                            "; valid names: " + join_names(pr::preset_names()));
    if ((p->model == pr::Model::TwoMode) != two)
      throw CliError(2, "preset " + p->name + " provides " + pr::to_string(p->model) +
                            " couplings, which do not fit model " + pr::to_string(model));
    out = p->couplings;
  }
  if (two) {
    auto& c = std::get<twm::TwoModeCouplings>(out);
    if (o.couplings.count("ej") && o.couplings.count("omega"))
      throw CliError(2, "give either --ej or --omega (synonyms for two_mode), not both");
    for (const auto& [k, v] : o.couplings) {
      if (k == "u11") c.u11 = v;
      else if (k == "u22") c.u22 = v;
      else if (k == "u12") c.u12 = v;
      else if (k == "mu1") c.mu1 = v;
      else if (k == "mu2") c.mu2 = v;
      else if (k == "ej" || k == "omega") c.ej = v;
      else throw CliError(2, "--" + k + " does not apply to model two_mode");
    }
  } else {
    auto& c = std::get<thm::ThreeModeCouplings>(out);
    for (const auto& [k, v] : o.couplings) {
      if (k == "uaa") c.uaa = v;
      else if (k == "ubb") c.ubb = v;
      else if (k == "ucc") c.ucc = v;
      else if (k == "uab") c.uab = v;
      else if (k == "uac") c.uac = v;
      else if (k == "ubc") c.ubc = v;
      else if (k == "mua") c.mua = v;
      else if (k == "mub") c.mub = v;
      else if (k == "muc") c.muc = v;
      else if (k == "omega") c.omega = v;
      else throw CliError(2, "--" + k + " does not apply to model " + pr::to_string(model));
    }
  }
  return out;
}

void check_h1_usage(pr::Model model, const Options& o) {
  if (o.h1_given && model != pr::Model::ThreeModeNonintegrable)
    throw CliError(2, "--h1-strength applies only to three_mode_nonintegrable");
}

std::int64_t parse_int(const std::string& s, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw CliError(2, std::string("bad ") + what + ": " + s);
  }
  if (pos != s.size()) throw CliError(2, std::string("bad ") + what + ": " + s);
  return v;
}

std::vector<std::int64_t> expand_sectors(const Options& o) {
  const bool n_given = o.n >= 0;
  const bool range_given = !o.sectors_text.empty();
  if (n_given && range_given) throw CliError(2, "give either --N or --sectors, not both");
  if (!n_given && !range_given) throw CliError(2, "one of --N or --sectors is required");
  if (n_given) return {o.n};

  std::vector<std::string> parts;
  std::string cur;
  for (char c : o.sectors_text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 2 && parts.size() != 3)
    throw CliError(2, "--sectors expects start:end:step, got: " + o.sectors_text);
  const std::int64_t start = parse_int(parts[0], "sector start");
  const std::int64_t end = parse_int(parts[1], "sector end");
  const std::int64_t step = parts.size() == 3 ? parse_int(parts[2], "sector step") : 1;
  if (start < 0) throw CliError(2, "sector start must be nonnegative");
  if (step < 1) throw CliError(2, "sector step must be >= 1");
  if (start > end) throw CliError(2, "empty sector range: " + o.sectors_text);
  std::vector<std::int64_t> out;
  for (std::int64_t v = start; v <= end; v += step) out.push_back(v);
  return out;
}

std::string label_n(std::int64_t n) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "N=%lld", static_cast<long long>(n));
  return buf;
}

std::string label_ni(std::int64_t n, std::int64_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "N=%lld I=%lld", static_cast<long long>(n),
                static_cast<long long>(i));
  return buf;
}

st::SpectrumCollection compute_collection(pr::Model model, const AnyCouplings& cpl,
                                          const std::vector<std::int64_t>& ns,
                                          double h1_strength) {
  st::SpectrumCollection col;
  if (model == pr::Model::TwoMode) {
    const auto& c = std::get<twm::TwoModeCouplings>(cpl);
    auto spectra =
        cli_par::parallel_map(ns, [&](std::int64_t n) { return twm::spectrum(c, n); });
    for (std::size_t i = 0; i < ns.size(); ++i)
      col.sectors.push_back({label_n(ns[i]), std::move(spectra[i])});
  } else if (model == pr::Model::ThreeMode) {
    const auto& c = std::get<thm::ThreeModeCouplings>(cpl);
    auto blocks = cli_par::parallel_map(
        ns, [&](std::int64_t n) { return thm::spectrum_integrable_restricted(c, n); });
    for (auto& block : blocks)
      for (auto& sector : block)
        col.sectors.push_back(
            {label_ni(sector.n_atoms, sector.i_imbalance), std::move(sector.energies)});
  } else {
    const auto& c = std::get<thm::ThreeModeCouplings>(cpl);
    auto spectra = cli_par::parallel_map(
        ns, [&](std::int64_t n) { return thm::spectrum_nonintegrable(c, n, h1_strength); });
    for (std::size_t i = 0; i < ns.size(); ++i)
      col.sectors.push_back({label_n(ns[i]), std::move(spectra[i])});
  }
  return col;
}

ojson couplings_json(const AnyCouplings& cpl) {
  ojson j;
  if (std::holds_alternative<twm::TwoModeCouplings>(cpl)) {
    const auto& c = std::get<twm::TwoModeCouplings>(cpl);
    j["u11"] = c.u11;
    j["u22"] = c.u22;
    j["u12"] = c.u12;
    j["mu1"] = c.mu1;
    j["mu2"] = c.mu2;
    j["ej"] = c.ej;
  } else {
    const auto& c = std::get<thm::ThreeModeCouplings>(cpl);
    j["uaa"] = c.uaa;
    j["ubb"] = c.ubb;
    j["ucc"] = c.ucc;
    j["uab"] = c.uab;
    j["uac"] = c.uac;
    j["ubc"] = c.ubc;
    j["mua"] = c.mua;
    j["mub"] = c.mub;
    j["muc"] = c.muc;
    j["omega"] = c.omega;
  }
  return j;
}

ojson preset_json(const Options& o) {
  return o.preset_name.empty() ? ojson(nullptr) : ojson(o.preset_name);
}

int run_spectrum(const Options& o) {
  const auto model = parse_model_or_throw(o.model_text);
  check_h1_usage(model, o);
  const auto cpl = resolve_couplings(model, o);
  const auto ns = expand_sectors(o);
  const auto col = compute_collection(model, cpl, ns, o.h1_strength);

  if (o.format == "json") {
    ojson j;
    j["command"] = "spectrum";
    j["model"] = pr::to_string(model);
    j["preset"] = preset_json(o);
    j["couplings"] = couplings_json(cpl);
    ojson sectors = ojson::array();
    for (const auto& [label, energies] : col.sectors)
      sectors.push_back({{"label", label}, {"energies", energies}});
    j["sectors"] = std::move(sectors);
    cli_io::emit(o.out, j.dump(2) + "\n");
  } else {
    std::string csv = "sector,index,energy\r\n";
    for (const auto& [label, energies] : col.sectors)
      for (std::size_t i = 0; i < energies.size(); ++i)
        csv += csv_field(label) + "," + std::to_string(i) + "," + g17(energies[i]) + "\r\n";
    cli_io::emit(o.out, csv);
  }
  return 0;
}

int run_dos(const Options& o) {
  const auto model = parse_model_or_throw(o.model_text);
  check_h1_usage(model, o);
  const auto cpl = resolve_couplings(model, o);
  if (o.n < 0) throw CliError(2, "--N is required for dos");

  std::vector<double> levels;
  if (model == pr::Model::TwoMode) {
    levels = twm::spectrum(std::get<twm::TwoModeCouplings>(cpl), o.n);
  } else if (model == pr::Model::ThreeMode) {
    for (auto& sector :
         thm::spectrum_integrable_restricted(std::get<thm::ThreeModeCouplings>(cpl), o.n))
      levels.insert(levels.end(), sector.energies.begin(), sector.energies.end());
    std::sort(levels.begin(), levels.end());
  } else {
    levels = thm::spectrum_nonintegrable(std::get<thm::ThreeModeCouplings>(cpl), o.n,
                                         o.h1_strength);
  }

  const auto hist = st::density_of_states(levels, o.bins);

  if (!o.svg_path.empty()) {
    cli_svg::Series line{"states per bin", hist.centers, {}, "#1f6fb2", false};
    line.y.reserve(hist.counts.size());
    for (auto c : hist.counts) line.y.push_back(static_cast<double>(c));
    cli_io::write_file(o.svg_path,
                       cli_svg::chart("Density of states", "E", "count", nullptr, {line}));
  }

  if (o.format == "json") {
    ojson j;
    j["command"] = "dos";
    j["model"] = pr::to_string(model);
    j["preset"] = preset_json(o);
    j["couplings"] = couplings_json(cpl);
    j["N"] = o.n;
    j["bins"] = o.bins;
    j["levels"] = levels.size();
    j["histogram"] = {{"centers", hist.centers},
                      {"counts", hist.counts},
                      {"bin_width", hist.bin_width}};
    cli_io::emit(o.out, j.dump(2) + "\n");
  } else {
    std::string csv = "bin_center,count\r\n";
    for (std::size_t i = 0; i < hist.counts.size(); ++i)
      csv += g17(hist.centers[i]) + "," + std::to_string(hist.counts[i]) + "\r\n";
    cli_io::emit(o.out, csv);
  }
  return 0;
}

std::string hist_csv(const st::SpacingHistogram& h) {
  std::string csv = "s_lo,s_hi,count,density\r\n";
  for (std::size_t i = 0; i < h.bins(); ++i)
    csv += g17(h.edges[i]) + "," + g17(h.edges[i + 1]) + "," + std::to_string(h.counts[i]) +
           "," + g17(h.densities[i]) + "\r\n";
  return csv;
}

std::string rescaled_csv(const st::SpacingHistogram& h) {
  std::string csv = "s_center,density,poisson,wigner\r\n";
  for (std::size_t i = 0; i < h.bins(); ++i) {
    const double s = h.center(i);
    csv += g17(s) + "," + g17(h.densities[i]) + "," + g17(st::reference_poisson(s)) + "," +
           g17(st::reference_wigner(s)) + "\r\n";
  }
  return csv;
}

int run_spacings(const Options& o) {
  ojson j;
  j["command"] = "spacings";

  st::SpectrumCollection col;
  if (!o.input.empty()) {
    if (!o.model_text.empty() || !o.preset_name.empty() || !o.couplings.empty() ||
        o.n >= 0 || !o.sectors_text.empty() || o.h1_given)
      throw CliError(2, "--input replaces the model/preset/coupling/sector flags");
    col = cli_io::read_spectrum_csv(o.input);
    j["input"] = o.input;
  } else {
    const auto model = parse_model_or_throw(o.model_text);
    check_h1_usage(model, o);
    const auto cpl = resolve_couplings(model, o);
    const auto ns = expand_sectors(o);
    col = compute_collection(model, cpl, ns, o.h1_strength);
    j["model"] = pr::to_string(model);
    j["preset"] = preset_json(o);
    j["couplings"] = couplings_json(cpl);
  }

  std::size_t total_levels = 0;
  ojson labels = ojson::array();
  for (const auto& [label, energies] : col.sectors) {
    total_levels += energies.size();
    labels.push_back(label);
  }
  j["sector_count"] = col.sectors.size();
  j["sector_labels"] = std::move(labels);
  j["total_levels"] = total_levels;
  j["cross_sector"] = o.cross_sector;
  j["discard_factor"] = o.discard_factor;
  j["bins"] = o.bins;

  const auto set = st::pooled_spacings(col, o.discard_factor, o.cross_sector);
  j["spacings"] = {
      {"total", set.total_count},
      {"kept", set.spacings.size()},
      {"discarded", set.discarded_count},
      {"discard_fraction",
       static_cast<double>(set.discarded_count) / static_cast<double>(set.total_count)},
      {"largest_kept", set.largest_kept}};

  const auto hist = st::histogram_spacings(set, o.bins);

  std::optional<st::ExponentialFit> fit, fallback;
  std::string fit_error;
  try {
    fit = st::fit_exponential(hist);
  } catch (const st::FitFailure& f) {
    fit_error = f.what();
    fallback = f.fallback;
  } catch (const std::domain_error& e) {
    fit_error = e.what();
  }

  if (fit) {
    const auto rescaled = st::rescale(hist, *fit);
    j["fit"] = {{"gamma", fit->gamma}, {"beta", fit->beta}, {"residual_rms", fit->residual_rms}};
    j["ks"] = {{"poisson", st::distribution_distance(set, st::ReferenceLaw::Poisson, *fit)},
               {"wigner", st::distribution_distance(set, st::ReferenceLaw::Wigner)}};
    if (o.format == "json") {
      j["histogram"] = {{"edges", hist.edges},
                        {"counts", hist.counts},
                        {"densities", hist.densities}};
      ojson pois = ojson::array(), wig = ojson::array();
      for (std::size_t i = 0; i < rescaled.bins(); ++i) {
        pois.push_back(st::reference_poisson(rescaled.center(i)));
        wig.push_back(st::reference_wigner(rescaled.center(i)));
      }
      j["rescaled"] = {{"edges", rescaled.edges},
                       {"densities", rescaled.densities},
                       {"poisson_at_centers", std::move(pois)},
                       {"wigner_at_centers", std::move(wig)}};
    }
    std::cout << j.dump(2) << "\n";
    if (!o.out.empty()) {
      cli_io::write_file(o.out + ".summary.json", j.dump(2) + "\n");
      cli_io::write_file(o.out + ".hist.csv", hist_csv(hist));
      cli_io::write_file(o.out + ".rescaled.csv", rescaled_csv(rescaled));
    }
    if (!o.svg_path.empty()) {
      cli_svg::Bars bars;
      for (std::size_t i = 0; i < rescaled.bins(); ++i) {
        bars.lo.push_back(rescaled.edges[i]);
        bars.hi.push_back(rescaled.edges[i + 1]);
        bars.y.push_back(rescaled.densities[i]);
      }
      const double smax = rescaled.edges.back();
      cli_svg::Series pois{"Poisson exp(-s)", {}, {}, "#d62728", false};
      cli_svg::Series wig{"Wigner surmise", {}, {}, "#2ca02c", true};
      for (int k = 0; k <= 200; ++k) {
        const double s = smax * k / 200.0;
        pois.x.push_back(s);
        pois.y.push_back(st::reference_poisson(s));
        wig.x.push_back(s);
        wig.y.push_back(st::reference_wigner(s));
      }
      cli_io::write_file(o.svg_path, cli_svg::chart("Level spacing distribution", "s", "P(s)",
                                                    &bars, {pois, wig}));
    }
    return 0;
  }

  j["error"] = {{"type", "fit_failure"}, {"detail", fit_error}};
  if (fallback)
    j["fit_fallback"] = {{"gamma", fallback->gamma}, {"beta", fallback->beta}};
  try {
    j["ks"] = {{"poisson", st::distribution_distance(set, st::ReferenceLaw::Poisson)},
               {"wigner", st::distribution_distance(set, st::ReferenceLaw::Wigner)}};
  } catch (const std::domain_error&) {
    // too few spacings for a meaningful distance; leave ks out
  }
  std::cout << j.dump(2) << "\n";
  if (!o.out.empty()) {
    cli_io::write_file(o.out + ".summary.json", j.dump(2) + "\n");
    cli_io::write_file(o.out + ".hist.csv", hist_csv(hist));
  }
  return 3;
}

int run_presets(const Options& o) {
  if (o.json_listing) {
    ojson arr = ojson::array();
    for (const auto& p : pr::all_presets())
      arr.push_back({{"model", pr::to_string(p.model)},
                     {"name", p.name},
                     {"alias", p.alias},
                     {"couplings", couplings_json(p.couplings)}});
    cli_io::emit(o.out, arr.dump(2) + "\n");
    return 0;
  }
  std::string text;
  char buf[256];
  for (const auto& p : pr::all_presets()) {
    std::snprintf(buf, sizeof buf, "%-10s  %-10s  %-10s  ", pr::to_string(p.model).c_str(),
                  p.name.c_str(), p.alias.c_str());
    text += buf;
    if (std::holds_alternative<twm::TwoModeCouplings>(p.couplings)) {
      const auto& c = std::get<twm::TwoModeCouplings>(p.couplings);
      std::snprintf(buf, sizeof buf, "U11=%g U22=%g U12=%g mu1=%g mu2=%g Omega=%g", c.u11,
                    c.u22, c.u12, c.mu1, c.mu2, c.ej);
    } else {
      const auto& c = std::get<thm::ThreeModeCouplings>(p.couplings);
      std::snprintf(buf, sizeof buf,
                    "Uaa=%g Ubb=%g Ucc=%g Uab=%g Uac=%g Ubc=%g mua=%g mub=%g muc=%g Omega=%g",
                    c.uaa, c.ubb, c.ucc, c.uab, c.uac, c.ubc, c.mua, c.mub, c.muc, c.omega);
    }
    text += buf;
    text += '\n';
  }
  cli_io::emit(o.out, text);
  return 0;
}

void add_coupling_flags(CLI::App* sub, Options& o) {
  static const char* keys[] = {"u11", "u22", "u12", "mu1", "mu2", "ej",
                               "uaa", "ubb", "ucc", "uab", "uac", "ubc",
                               "mua", "mub", "muc", "omega"};
  for (const char* k : keys) {
    sub->add_option_function<double>(
        std::string("--") + k,
        [&o, k](double v) { o.couplings[k] = v; },
        std::string("explicit coupling ") + k + " (overrides the preset value)");
  }
}

void add_model_flags(CLI::App* sub, Options& o) {
  sub->add_option("--model", o.model_text,
                  "two_mode | three_mode | three_mode_nonintegrable");
  sub->add_option("--preset", o.preset_name, "named coupling set; see the presets command");
  add_coupling_flags(sub, o);
  sub->add_option_function<double>(
      "--h1-strength",
      [&o](double v) {
        o.h1_strength = v;
        o.h1_given = true;
      },
      "strength of the integrability-breaking hopping term (nonintegrable model only)");
  sub->set_config("--config", "", "configuration file with key=value lines");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact spectra and level-spacing statistics of coupled BEC models"};
  app.require_subcommand(1);

  Options o_spec, o_dos, o_spac, o_pres;
  int rc = 0;

  auto* spectrum = app.add_subcommand("spectrum", "Compute per-sector eigenvalues");
  add_model_flags(spectrum, o_spec);
  spectrum->add_option("--N", o_spec.n, "single sector size")->check(CLI::NonNegativeNumber);
  spectrum->add_option("--sectors", o_spec.sectors_text, "sector range start:end:step");
  spectrum->add_option("--out", o_spec.out, "output path (default stdout)");
  spectrum->add_option("--format", o_spec.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  spectrum->callback([&] { rc = run_spectrum(o_spec); });

  auto* dos = app.add_subcommand("dos", "Histogram the density of states of one sector");
  add_model_flags(dos, o_dos);
  dos->add_option("--N", o_dos.n, "sector size")->check(CLI::NonNegativeNumber);
  dos->add_option("--bins", o_dos.bins, "histogram bins")->check(CLI::PositiveNumber);
  dos->add_option("--out", o_dos.out, "output path (default stdout)");
  dos->add_option("--format", o_dos.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  dos->add_option("--svg", o_dos.svg_path, "also write an SVG line plot");
  dos->callback([&] { rc = run_dos(o_dos); });

  auto* spacings =
      app.add_subcommand("spacings", "Level-spacing histogram, exponential fit, KS distances");
  add_model_flags(spacings, o_spac);
  spacings->add_option("--N", o_spac.n, "single sector size")->check(CLI::NonNegativeNumber);
  spacings->add_option("--sectors", o_spac.sectors_text, "sector range start:end:step");
  spacings->add_option("--input", o_spac.input,
                       "read sectors from a spectrum CSV instead of diagonalizing");
  spacings->add_option("--bins", o_spac.bins, "histogram bins")->check(CLI::PositiveNumber);
  spacings->add_option("--discard-factor", o_spac.discard_factor,
                       "drop gaps larger than this multiple of the mean gap");
  spacings->add_flag("--cross-sector-spacings", o_spac.cross_sector,
                     "merge all sectors before taking gaps (default: per sector)");
  spacings->add_option("--out", o_spac.out,
                       "basename for .summary.json, .hist.csv, .rescaled.csv");
  spacings->add_option("--format", o_spac.format,
                       "json embeds the histograms in the summary")
      ->check(CLI::IsMember({"csv", "json"}));
  spacings->add_option("--svg", o_spac.svg_path, "also write an SVG plot");
  spacings->callback([&] { rc = run_spacings(o_spac); });

  auto* presets = app.add_subcommand("presets", "List the published coupling sets");
  presets->add_flag("--json", o_pres.json_listing, "machine-readable listing");
  presets->add_option("--out", o_pres.out, "output path (default stdout)");
  presets->callback([&] { rc = run_presets(o_pres); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
