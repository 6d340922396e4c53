#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcfec/analysis.hpp"
#include "pcfec/bitio.hpp"
#include "pcfec/sim.hpp"
#include "pcfec/version.hpp"

namespace {

using nlohmann::json;
using namespace pcfec;

std::string iso_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Every command emits one of these alongside its results; together with the
// seed it pins down the run exactly.
struct Manifest {
  json j;
  std::string path;  // empty: stderr

  Manifest(const std::string& command, json parameters) {
    j["command"] = command;
    j["parameters"] = std::move(parameters);
    j["version"] = kVersion;
    j["started"] = iso_utc_now();
  }
  void finish() {
    j["finished"] = iso_utc_now();
    if (path.empty()) {
      std::cerr << j.dump(2) << "\n";
    } else {
      std::ofstream out(path);
      out << j.dump(2) << "\n";
    }
  }
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct DecoderFlags {
  int iterations = 2;
  bool pp = true;
  std::string schedule = "hardware";

  void attach(CLI::App* cmd) {
    cmd->add_option("--iterations", iterations, "full decoding iterations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag("--pp,!--no-pp", pp, "post-processing of stall patterns")
        ->capture_default_str();
    cmd->add_option("--schedule", schedule, "post-processing schedule")
        ->check(CLI::IsMember({"reference", "hardware"}))
        ->capture_default_str();
  }
  DecoderConfig config() const {
    DecoderConfig cfg;
    cfg.iterations = iterations;
    cfg.post_processing = pp;
    cfg.schedule = schedule == "reference" ? Schedule::Reference : Schedule::Hardware;
    return cfg;
  }
  json to_json() const {
    return {{"iterations", iterations}, {"pp", pp}, {"schedule", schedule}};
  }
};

int run_encode(const std::string& in, const std::string& out, int shorten,
               const std::string& manifest_path) {
  ProductCode pc(shorten);
  const int n = pc.n(), k = pc.k();
  const std::size_t block_in = packed_block_bytes(k, k);

  Manifest man("encode", {{"in", in},
                          {"out", out},
                          {"code_shorten", shorten},
                          {"n", n},
                          {"k", k}});
  man.path = manifest_path;

  auto data = read_file(in);
  if (data.empty() || data.size() % block_in != 0) {
    std::cerr << "encode: input must be a positive multiple of " << block_in
              << " bytes (" << k << "x" << k << "-bit blocks), got " << data.size()
              << "\n";
    return 1;
  }
  std::vector<std::uint8_t> packed;
  const std::size_t blocks = data.size() / block_in;
  for (std::size_t b = 0; b < blocks; ++b) {
    auto info = unpack_block({data.data() + b * block_in, block_in}, k, k);
    auto m = pc.encode(info);
    auto bytes = pack_block(m.bits, n, n);
    packed.insert(packed.end(), bytes.begin(), bytes.end());
  }
  write_file(out, packed);
  man.j["blocks"] = blocks;
  man.finish();
  return 0;
}

int run_decode(const std::string& in, const std::string& out, const std::string& report,
               int shorten, const DecoderFlags& df, const std::string& manifest_path) {
  ProductCode pc(shorten);
  const int n = pc.n(), k = pc.k();
  const std::size_t block_in = packed_block_bytes(n, n);

  json params{{"in", in}, {"out", out}, {"code_shorten", shorten},
              {"decoder", df.to_json()}};
  if (!report.empty()) params["report"] = report;
  Manifest man("decode", params);
  man.path = manifest_path;

  auto data = read_file(in);
  if (data.empty() || data.size() % block_in != 0) {
    std::cerr << "decode: input must be a positive multiple of " << block_in
              << " bytes (" << n << "x" << n << "-bit blocks), got " << data.size()
              << "\n";
    return 1;
  }

  std::ostringstream rep_csv;
  rep_csv << "frame,success,half_iterations,pp_applied,pp_iteration\n";
  std::vector<std::uint8_t> packed;
  const std::size_t blocks = data.size() / block_in;
  for (std::size_t b = 0; b < blocks; ++b) {
    ProductMatrix m(n);
    m.bits = unpack_block({data.data() + b * block_in, block_in}, n, n);
    auto rep = pc.decode(std::move(m), df.config());
    auto info = pc.extract_info(rep.matrix);
    auto bytes = pack_block(info, k, k);
    packed.insert(packed.end(), bytes.begin(), bytes.end());
    rep_csv << b << ',' << (rep.success ? 1 : 0) << ',' << rep.half_iterations_run
            << ',' << (rep.pp_applied ? 1 : 0) << ',' << (rep.pp_iteration_run ? 1 : 0)
            << '\n';
  }
  write_file(out, packed);
  if (report.empty()) {
    std::cout << rep_csv.str();
  } else {
    std::ofstream rf(report);
    rf << rep_csv.str();
  }
  man.j["blocks"] = blocks;
  man.finish();
  return 0;
}

struct SimFlags {
  std::string channel = "bsc";
  std::vector<double> p;
  std::vector<double> noise_std;
  int shorten = kDefaultShorten;
  DecoderFlags decoder;
  std::uint64_t seed = 1;
  std::uint64_t min_frames = 10000;
  std::uint64_t min_frame_errors = 100;
  std::uint64_t max_frames = 10000000;
  unsigned threads = std::thread::hardware_concurrency();
  std::string out;
};

int run_sim(const SimFlags& f, const std::string& manifest_path) {
  const bool bsc = f.channel == "bsc";
  if (bsc && f.p.empty()) {
    std::cerr << "sim: --channel bsc needs --p\n";
    return 1;
  }
  if (!bsc && f.p.empty() && f.noise_std.empty()) {
    std::cerr << "sim: --channel pam4 needs --noise-std or --p\n";
    return 1;
  }

  // Sweep points: for pam4, --p values are pre-FEC BER targets that fix the
  // noise level analytically.
  struct Point {
    double p_nominal;
    double noise_std;
  };
  std::vector<Point> points;
  if (bsc) {
    for (double p : f.p) points.push_back({p, 0.0});
  } else {
    for (double s : f.noise_std) points.push_back({pam4_gray_ber(s), s});
    for (double p : f.p) points.push_back({p, pam4_noise_std_for_ber(p)});
  }

  json params{{"channel", f.channel},
              {"p", f.p},
              {"noise_std", f.noise_std},
              {"code_shorten", f.shorten},
              {"decoder", f.decoder.to_json()},
              {"master_seed", f.seed},
              {"min_frames", f.min_frames},
              {"min_frame_errors", f.min_frame_errors},
              {"max_frames", f.max_frames},
              {"threads", f.threads}};
  if (!f.out.empty()) params["out"] = f.out;
  Manifest man("sim", params);
  man.path = manifest_path;
  if (man.path.empty() && !f.out.empty()) man.path = f.out + ".manifest.json";

  std::ostringstream csv;
  csv << "p_nominal,measured_p,frames,pre_fec_bit_errors,post_fec_bit_errors,"
         "frame_errors,ber,fer,pp_rate\n";
  for (const Point& pt : points) {
    SimConfig cfg;
    cfg.channel.kind = bsc ? ChannelConfig::Kind::Bsc : ChannelConfig::Kind::AwgnPam4;
    cfg.channel.p = pt.p_nominal;
    cfg.channel.noise_std = pt.noise_std;
    cfg.decoder = f.decoder.config();
    cfg.shorten = f.shorten;
    cfg.master_seed = f.seed;
    cfg.min_frames = f.min_frames;
    cfg.min_frame_errors = f.min_frame_errors;
    cfg.max_frames = f.max_frames;
    Simulator sim(cfg);
    SimStats st = sim.run(f.threads ? f.threads : 1);
    csv << fmt6(pt.p_nominal) << ',' << fmt6(st.measured_p()) << ',' << st.frames
        << ',' << st.pre_fec_bit_errors << ',' << st.post_fec_bit_errors << ','
        << st.frame_errors << ',' << fmt6(st.ber()) << ',' << fmt6(st.fer()) << ','
        << fmt6(st.pp_rate()) << '\n';
  }
  if (f.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream of(f.out);
    of << csv.str();
  }
  man.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extended-BCH product code FEC: codec, simulator, analysis"};
  app.require_subcommand(1);
  std::string manifest_path;
  app.add_option("--manifest", manifest_path,
                 "write the run manifest to this file instead of stderr");

  // encode
  auto* enc = app.add_subcommand("encode", "encode packed info blocks");
  std::string enc_in, enc_out;
  int enc_shorten = kDefaultShorten;
  enc->add_option("--in", enc_in, "packed info-bit file")->required();
  enc->add_option("--out", enc_out, "packed codeword file")->required();
  enc->add_option("--code-shorten", enc_shorten, "component shortening depth")
      ->check(CLI::Range(0, 61))
      ->capture_default_str();

  // decode
  auto* dec = app.add_subcommand("decode", "decode packed codeword blocks");
  std::string dec_in, dec_out, dec_report;
  int dec_shorten = kDefaultShorten;
  DecoderFlags dec_flags;
  dec->add_option("--in", dec_in, "packed codeword file")->required();
  dec->add_option("--out", dec_out, "packed info-bit file")->required();
  dec->add_option("--report", dec_report, "per-frame status CSV (default stdout)");
  dec->add_option("--code-shorten", dec_shorten, "component shortening depth")
      ->check(CLI::Range(0, 61))
      ->capture_default_str();
  dec_flags.attach(dec);

  // sim
  auto* simc = app.add_subcommand("sim", "Monte-Carlo error-rate simulation");
  SimFlags sf;
  simc->add_option("--channel", sf.channel, "channel model")
      ->check(CLI::IsMember({"bsc", "pam4"}))
      ->capture_default_str();
  simc->add_option("--p", sf.p, "sweep of input error probabilities");
  simc->add_option("--noise-std", sf.noise_std, "sweep of AWGN noise levels");
  simc->add_option("--code-shorten", sf.shorten, "component shortening depth")
      ->check(CLI::Range(0, 61))
      ->capture_default_str();
  sf.decoder.attach(simc);
  simc->add_option("--seed", sf.seed, "master seed")->capture_default_str();
  simc->add_option("--min-frames", sf.min_frames)->capture_default_str();
  simc->add_option("--min-frame-errors", sf.min_frame_errors)->capture_default_str();
  simc->add_option("--max-frames", sf.max_frames)->capture_default_str();
  simc->add_option("--threads", sf.threads, "worker threads")->capture_default_str();
  simc->add_option("--out", sf.out, "CSV output file (default stdout)");

  // analyze
  auto* ana = app.add_subcommand("analyze", "error floor, coding gain, latency");
  ana->require_subcommand(1);

  auto* floor = ana->add_subcommand("floor", "minimal stall-pattern floor estimate");
  double floor_p = 4e-3;
  bool floor_pp = true;
  floor->add_option("--p", floor_p, "input error probability")->required();
  floor->add_flag("--pp,!--no-pp", floor_pp, "with post-processing")
      ->capture_default_str();

  auto* ncg = ana->add_subcommand("ncg", "net coding gain between operating points");
  double ncg_p_in = 0, ncg_ber_out = 0;
  bool ncg_rate = false;
  ncg->add_option("--p-in", ncg_p_in, "input error probability")->required();
  ncg->add_option("--ber-out", ncg_ber_out, "output BER")->required();
  ncg->add_flag("--with-rate-term", ncg_rate, "add 10*log10(K/N)");

  auto* lat = ana->add_subcommand("latency", "decoder clock-cycle model");
  LatencyParams lp;
  double clock_mhz = 609.0;
  lat->add_option("--pc", lp.component_decoders, "component decoders")
      ->capture_default_str();
  lat->add_option("--pl", lp.loading_lanes, "loading lanes")->capture_default_str();
  lat->add_option("--np", lp.pipeline_stages, "pipeline stages")->capture_default_str();
  lat->add_option("--iterations", lp.iterations, "decoding iterations")
      ->capture_default_str();
  lat->add_option("--clock-mhz", clock_mhz, "clock frequency")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enc) return run_encode(enc_in, enc_out, enc_shorten, manifest_path);
    if (*dec)
      return run_decode(dec_in, dec_out, dec_report, dec_shorten, dec_flags,
                        manifest_path);
    if (*simc) return run_sim(sf, manifest_path);

    if (*floor) {
      Manifest man("analyze floor", {{"p", floor_p}, {"pp", floor_pp}});
      man.path = manifest_path;
      auto est = estimate_floor(floor_p, floor_pp);
      json out{{"p", est.p},
               {"pp", est.pp},
               {"fer_floor", est.fer_floor},
               {"ber_floor", est.ber_floor},
               {"pattern_weight", est.pattern_weight},
               {"multiplicity", est.multiplicity}};
      std::cout << out.dump(2) << "\n";
      man.finish();
      return 0;
    }
    if (*ncg) {
      Manifest man("analyze ncg", {{"p_in", ncg_p_in},
                                   {"ber_out", ncg_ber_out},
                                   {"with_rate_term", ncg_rate}});
      man.path = manifest_path;
      json out{{"p_in", ncg_p_in},
               {"ber_out", ncg_ber_out},
               {"ncg_db", ncg_db(ncg_p_in, ncg_ber_out, ncg_rate)},
               {"rate_term_included", ncg_rate}};
      std::cout << out.dump(2) << "\n";
      man.finish();
      return 0;
    }
    if (*lat) {
      Manifest man("analyze latency", {{"pc", lp.component_decoders},
                                       {"pl", lp.loading_lanes},
                                       {"np", lp.pipeline_stages},
                                       {"iterations", lp.iterations},
                                       {"clock_mhz", clock_mhz}});
      man.path = manifest_path;
      auto b = cycle_count(lp);
      json out{{"component_decoders", lp.component_decoders},
               {"loading_lanes", lp.loading_lanes},
               {"pipeline_stages", lp.pipeline_stages},
               {"iterations", lp.iterations},
               {"cycles", b.total()},
               {"breakdown",
                {{"loading_bulk", b.loading_bulk},
                 {"residual", b.residual},
                 {"standard_feed", b.standard_feed},
                 {"pipeline_flush", b.pipeline_flush}}},
               {"bits_per_cycle", throughput_bits_per_cycle(lp)},
               {"clock_mhz", clock_mhz},
               {"throughput_gbps", throughput_gbps(lp, clock_mhz)}};
      std::cout << out.dump(2) << "\n";
      man.finish();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
