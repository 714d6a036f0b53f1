#include "ese/trace_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ese/error.hpp"

namespace ese {

static_assert(std::endian::native == std::endian::little, "snapshot format assumes a little-endian host");

namespace {

[[noreturn]] void io_error(const std::filesystem::path& path, const std::string& what) {
  throw Error(ErrorKind::io, path.string() + ": " + what);
}

template <class T>
T expect(std::istream& in, const std::filesystem::path& path, const char* key) {
  std::string word;
  T value{};
  if (!(in >> word) || word != key || !(in >> value)) io_error(path, std::string("expected header key '") + key + "'");
  return value;
}

Termination termination_from_string(const std::string& s) {
  if (s == "reached_t_end") return Termination::reached_t_end;
  if (s == "blowup") return Termination::blowup;
  if (s == "aborted") return Termination::aborted;
  throw Error(ErrorKind::io, "unknown trace status '" + s + "'");
}

}  // namespace

void write_field(const std::filesystem::path& path, const Field& f, double t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_error(path, "cannot open for writing");
  const Grid& g = f.grid();
  std::ostringstream head;
  head << std::setprecision(17);
  head << "ESEFIELD 1\n" << "dim " << g.dim() << "\nextents";
  for (int k = 0; k < g.dim(); ++k) head << ' ' << g.extent(k);
  head << "\nbox";
  for (int k = 0; k < g.dim(); ++k) head << ' ' << g.interval(k).lo << ' ' << g.interval(k).hi;
  head << "\nboundary " << to_string(g.boundary()) << "\ntime " << t << "\nvalues " << f.size() << "\nend\n";
  const std::string text = head.str();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.write(reinterpret_cast<const char*>(f.values().data()), static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (!out) io_error(path, "write failed");
}

TimedField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error(path, "cannot open for reading");
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "ESEFIELD" || version != 1) io_error(path, "not an ESEFIELD v1 snapshot");
  const int dim = expect<int>(in, path, "dim");
  if (dim < 1 || dim > max_dim) io_error(path, "bad dimension");
  std::string word;
  std::vector<std::size_t> extents(dim);
  std::vector<Interval> box(dim);
  if (!(in >> word) || word != "extents") io_error(path, "expected extents");
  for (auto& e : extents)
    if (!(in >> e)) io_error(path, "bad extents");
  if (!(in >> word) || word != "box") io_error(path, "expected box");
  for (auto& iv : box)
    if (!(in >> iv.lo >> iv.hi)) io_error(path, "bad box");
  const auto boundary = expect<std::string>(in, path, "boundary");
  const double t = expect<double>(in, path, "time");
  const auto count = expect<std::size_t>(in, path, "values");
  if (!(in >> word) || word != "end") io_error(path, "expected end of header");
  in.get();  // newline after "end"

  Grid grid(extents, box, boundary_from_string(boundary));
  if (count != grid.size()) io_error(path, "value count does not match extents");
  std::vector<double> values(count);
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) io_error(path, "truncated value block");
  return {Field(grid, std::move(values)), t};
}

void save_trace(const std::filesystem::path& dir, const SolveTrace& trace) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json meta;
  meta["status"] = to_string(trace.status.kind);
  meta["t_stop"] = trace.status.t;
  meta["detail"] = trace.status.detail;
  meta["steps"] = trace.step_log.size();
  auto& list = meta["samples"] = nlohmann::ordered_json::array();
  char name[32];
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    std::snprintf(name, sizeof name, "snap_%06zu.fld", i);
    write_field(dir / name, trace.samples[i].f, trace.samples[i].t);
    list.push_back({{"t", trace.samples[i].t}, {"file", name}});
  }
  std::ofstream(dir / "trace.json") << meta.dump(2) << '\n';

  std::ofstream steps(dir / "steps.csv");
  steps << "step,dt\n" << std::setprecision(17);
  for (std::size_t i = 0; i < trace.step_log.size(); ++i) steps << i << ',' << trace.step_log[i] << '\n';
}

SolveTrace load_trace(const std::filesystem::path& dir) {
  std::ifstream in(dir / "trace.json");
  if (!in) io_error(dir / "trace.json", "missing trace metadata");
  nlohmann::json meta;
  try {
    in >> meta;
  } catch (const nlohmann::json::exception& e) {
    io_error(dir / "trace.json", e.what());
  }
  SolveTrace trace;
  trace.status.kind = termination_from_string(meta.at("status").get<std::string>());
  trace.status.t = meta.at("t_stop").get<double>();
  trace.status.detail = meta.value("detail", "");
  for (const auto& s : meta.at("samples")) {
    auto snap = read_field(dir / s.at("file").get<std::string>());
    trace.samples.push_back({snap.t, std::move(snap.f)});
  }
  if (trace.samples.empty()) io_error(dir, "trace has no samples");

  std::ifstream steps(dir / "steps.csv");
  std::string line;
  if (steps && std::getline(steps, line)) {
    while (std::getline(steps, line)) {
      const auto comma = line.find(',');
      if (comma != std::string::npos) trace.step_log.push_back(std::stod(line.substr(comma + 1)));
    }
  }
  return trace;
}

}  // namespace ese
