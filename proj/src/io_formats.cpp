#include "eposit/io_formats.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace eposit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view field, int line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw ParseError("cannot parse number '" + std::string(field) + "'", line_no);
  return v;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Yields (line_no, content) for non-empty, non-comment lines.
struct LineReader {
  std::istringstream stream;
  int line_no = 0;

  explicit LineReader(std::string text) : stream(std::move(text)) {}

  bool next(std::string& line) {
    while (std::getline(stream, line)) {
      ++line_no;
      const std::string_view t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      line.assign(t);
      return true;
    }
    return false;
  }
};

void expect_header(const std::vector<std::string_view>& fields,
                   const std::vector<std::string_view>& expected, int line_no) {
  if (fields != expected) {
    std::string want;
    for (std::string_view f : expected) {
      if (!want.empty()) want += ',';
      want += f;
    }
    throw ParseError("expected header '" + want + "'", line_no);
  }
}

void append_pose(std::string& row, const Pose& pose) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) row += ',' + fmt9(pose.rotation(r, c));
  for (int k = 0; k < 3; ++k) row += ',' + fmt9(pose.translation[k]);
}

Pose parse_pose(const std::vector<std::string_view>& fields, std::size_t at,
                int line_no) {
  Pose pose;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      pose.rotation(r, c) = parse_double(fields[at + 3 * r + c], line_no);
  for (int k = 0; k < 3; ++k)
    pose.translation[k] = parse_double(fields[at + 9 + k], line_no);
  return pose;
}

json intrinsics_to_json(const Intrinsics& intr) {
  return {{"f", intr.f}, {"u0", intr.u0}, {"v0", intr.v0},
          {"kx", intr.kx}, {"ky", intr.ky}};
}

Intrinsics intrinsics_from_json(const json& j) {
  return {j.at("f").get<double>(), j.at("u0").get<double>(),
          j.at("v0").get<double>(), j.at("kx").get<double>(),
          j.at("ky").get<double>()};
}

}  // namespace

void atomic_write_text(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

void write_manifest(const fs::path& path, const RunManifest& manifest) {
  json j;
  j["format_version"] = manifest.format_version;
  j["model"] = manifest.model;
  j["intrinsics"] = intrinsics_to_json(manifest.intrinsics);
  j["trajectory"] = {{"radius_scale", manifest.trajectory.radius_scale},
                     {"phase_deg", manifest.trajectory.phase_deg},
                     {"z_offset", manifest.trajectory.z_offset},
                     {"z_rate", manifest.trajectory.z_rate},
                     {"angular_rates_deg",
                      {manifest.trajectory.angular_rates_deg.x(),
                       manifest.trajectory.angular_rates_deg.y(),
                       manifest.trajectory.angular_rates_deg.z()}}};
  j["noise"] = {{"sigma", manifest.noise.sigma},
                {"mean", manifest.noise.mean},
                {"seed", manifest.noise.seed}};
  j["solver"] = {{"epsilon_tol", manifest.solver.epsilon_tol},
                 {"max_iters", manifest.solver.max_iters},
                 {"rank_tol", manifest.solver.rank_tol}};
  j["frames"] = manifest.frames;
  j["dt"] = manifest.dt;
  json offsets = json::array();
  for (const Eigen::Vector3d& off : manifest.object_offsets)
    offsets.push_back({off.x(), off.y(), off.z()});
  j["object_offsets"] = offsets;
  j["euler_convention"] = manifest.euler_convention;
  j["rng_algorithm"] = manifest.rng_algorithm;
  atomic_write_text(path, j.dump(2) + "\n");
}

RunManifest read_manifest(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 0);
  }
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kFormatVersion)
      throw ManifestVersionError("manifest format_version " +
                                 std::to_string(version) + " unsupported; this build reads " +
                                 std::to_string(kFormatVersion));
    RunManifest m;
    m.format_version = version;
    m.model = j.at("model").get<std::string>();
    if (!camera_model_from_string(m.model))
      throw ValidationError("unknown camera model '" + m.model + "'");
    m.intrinsics = intrinsics_from_json(j.at("intrinsics"));
    const json& t = j.at("trajectory");
    m.trajectory.radius_scale = t.at("radius_scale").get<double>();
    m.trajectory.phase_deg = t.at("phase_deg").get<double>();
    m.trajectory.z_offset = t.at("z_offset").get<double>();
    m.trajectory.z_rate = t.at("z_rate").get<double>();
    const json& rates = t.at("angular_rates_deg");
    m.trajectory.angular_rates_deg = {rates.at(0).get<double>(),
                                      rates.at(1).get<double>(),
                                      rates.at(2).get<double>()};
    const json& noise = j.at("noise");
    m.noise.sigma = noise.at("sigma").get<double>();
    m.noise.mean = noise.at("mean").get<double>();
    m.noise.seed = noise.at("seed").get<std::uint64_t>();
    const json& solver = j.at("solver");
    m.solver.epsilon_tol = solver.at("epsilon_tol").get<double>();
    m.solver.max_iters = solver.at("max_iters").get<int>();
    m.solver.rank_tol = solver.at("rank_tol").get<double>();
    m.frames = j.at("frames").get<int>();
    m.dt = j.at("dt").get<double>();
    for (const json& off : j.at("object_offsets"))
      m.object_offsets.emplace_back(off.at(0).get<double>(), off.at(1).get<double>(),
                                    off.at(2).get<double>());
    m.euler_convention = j.at("euler_convention").get<std::string>();
    m.rng_algorithm = j.at("rng_algorithm").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("manifest: ") + e.what());
  }
}

CorrespondenceSet read_correspondences(const fs::path& path, const Intrinsics& intr) {
  LineReader reader(read_text(path));
  std::string line;
  if (!reader.next(line)) throw ParseError("missing header row", reader.line_no + 1);
  expect_header(split_csv(line), {"tag", "du", "dv", "dw", "u", "v"}, reader.line_no);

  CorrespondenceSet corr;
  bool have_ref = false;
  while (reader.next(line)) {
    const auto fields = split_csv(line);
    if (fields.size() != 6)
      throw ParseError("expected 6 fields, got " + std::to_string(fields.size()),
                       reader.line_no);
    const Eigen::Vector3d offset(parse_double(fields[1], reader.line_no),
                                 parse_double(fields[2], reader.line_no),
                                 parse_double(fields[3], reader.line_no));
    const CenteredImagePoint p =
        center_pixel(intr, parse_double(fields[4], reader.line_no),
                     parse_double(fields[5], reader.line_no));
    if (fields[0] == "M0") {
      if (have_ref) throw ValidationError("duplicate M0 row");
      if (offset != Eigen::Vector3d::Zero())
        throw ValidationError("M0 offsets must be zero");
      corr.image_ref = p;
      have_ref = true;
    } else {
      corr.object.offsets.push_back(offset);
      corr.image_pts.push_back(p);
    }
  }
  if (!have_ref) throw ValidationError("missing M0 row");
  if (corr.object.size() < 3)
    throw ValidationError("need at least 4 points (M0 plus 3 offsets), got " +
                          std::to_string(corr.object.size() + 1));
  return corr;
}

void write_correspondences(const fs::path& path, const CorrespondenceSet& corr,
                           const Intrinsics& intr) {
  std::string text = "tag,du,dv,dw,u,v\n";
  const Eigen::Vector2d ref = raw_pixel(intr, corr.image_ref);
  text += "M0,0,0,0," + fmt9(ref.x()) + ',' + fmt9(ref.y()) + '\n';
  for (std::size_t i = 0; i < corr.image_pts.size(); ++i) {
    const Eigen::Vector3d& off = corr.object.offsets[i];
    const Eigen::Vector2d uv = raw_pixel(intr, corr.image_pts[i]);
    text += 'P' + std::to_string(i + 1) + ',' + fmt9(off.x()) + ',' + fmt9(off.y()) +
            ',' + fmt9(off.z()) + ',' + fmt9(uv.x()) + ',' + fmt9(uv.y()) + '\n';
  }
  atomic_write_text(path, text);
}

void write_results(const fs::path& path, std::span<const FrameRecord> frames) {
  std::string text = "t";
  for (const char* side : {"truth", "est"}) {
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        text += ',' + std::string(side) + "_r" + std::to_string(r) + std::to_string(c);
    for (const char* axis : {"tx", "ty", "tz"})
      text += ',' + std::string(side) + '_' + axis;
  }
  text += ",err_rot_x,err_rot_y,err_rot_z,err_tx,err_ty,err_tz,iterations,converged\n";
  for (const FrameRecord& fr : frames) {
    std::string row = fmt9(fr.t);
    append_pose(row, fr.truth);
    append_pose(row, fr.estimate.pose());
    for (int k = 0; k < 3; ++k) row += ',' + fmt9(fr.error.rot_err[k]);
    for (int k = 0; k < 3; ++k) row += ',' + fmt9(fr.error.trans_err[k]);
    row += ',' + std::to_string(fr.estimate.iterations);
    row += fr.estimate.converged ? ",1\n" : ",0\n";
    text += row;
  }
  atomic_write_text(path, text);
}

std::vector<FrameRecord> read_results(const fs::path& path) {
  LineReader reader(read_text(path));
  std::string line;
  if (!reader.next(line)) throw ParseError("missing header row", reader.line_no + 1);
  const auto header = split_csv(line);
  if (header.size() != 33 || header[0] != "t")
    throw ParseError("unrecognized results header", reader.line_no);

  std::vector<FrameRecord> out;
  while (reader.next(line)) {
    const auto fields = split_csv(line);
    if (fields.size() != 33)
      throw ParseError("expected 33 fields, got " + std::to_string(fields.size()),
                       reader.line_no);
    FrameRecord fr;
    fr.t = parse_double(fields[0], reader.line_no);
    fr.truth = parse_pose(fields, 1, reader.line_no);
    const Pose est = parse_pose(fields, 13, reader.line_no);
    fr.estimate.rotation = est.rotation;
    fr.estimate.translation = est.translation;
    for (int k = 0; k < 3; ++k)
      fr.error.rot_err[k] = parse_double(fields[25 + k], reader.line_no);
    for (int k = 0; k < 3; ++k)
      fr.error.trans_err[k] = parse_double(fields[28 + k], reader.line_no);
    fr.estimate.iterations =
        static_cast<int>(parse_double(fields[31], reader.line_no));
    fr.estimate.converged = parse_double(fields[32], reader.line_no) != 0.0;
    out.push_back(std::move(fr));
  }
  return out;
}

void write_frames(const fs::path& path, std::span<const FrameSample> frames,
                  const Intrinsics& intr) {
  std::string text = "t";
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      text += ",truth_r" + std::to_string(r) + std::to_string(c);
  text += ",truth_tx,truth_ty,truth_tz,m0_u,m0_v";
  const std::size_t npts = frames.empty() ? 0 : frames.front().corr.image_pts.size();
  for (std::size_t i = 1; i <= npts; ++i) {
    text += ",p" + std::to_string(i) + "_u";
    text += ",p" + std::to_string(i) + "_v";
  }
  text += '\n';
  for (const FrameSample& frame : frames) {
    std::string row = fmt9(frame.t);
    append_pose(row, frame.truth);
    const Eigen::Vector2d ref = raw_pixel(intr, frame.corr.image_ref);
    row += ',' + fmt9(ref.x()) + ',' + fmt9(ref.y());
    for (const CenteredImagePoint& p : frame.corr.image_pts) {
      const Eigen::Vector2d uv = raw_pixel(intr, p);
      row += ',' + fmt9(uv.x()) + ',' + fmt9(uv.y());
    }
    text += row + '\n';
  }
  atomic_write_text(path, text);
}

std::vector<SimulatedFrame> read_frames(const fs::path& path, const Intrinsics& intr,
                                        const ObjectPointSet& object) {
  LineReader reader(read_text(path));
  std::string line;
  if (!reader.next(line)) throw ParseError("missing header row", reader.line_no + 1);
  const std::size_t want = 15 + 2 * object.offsets.size();
  if (split_csv(line).size() != want)
    throw ParseError("frames header does not match the object point count",
                     reader.line_no);

  std::vector<SimulatedFrame> out;
  while (reader.next(line)) {
    const auto fields = split_csv(line);
    if (fields.size() != want)
      throw ParseError("expected " + std::to_string(want) + " fields, got " +
                           std::to_string(fields.size()),
                       reader.line_no);
    SimulatedFrame frame;
    frame.t = parse_double(fields[0], reader.line_no);
    frame.truth = parse_pose(fields, 1, reader.line_no);
    frame.corr.object = object;
    frame.corr.image_ref = center_pixel(intr, parse_double(fields[13], reader.line_no),
                                        parse_double(fields[14], reader.line_no));
    for (std::size_t i = 0; i < object.offsets.size(); ++i)
      frame.corr.image_pts.push_back(
          center_pixel(intr, parse_double(fields[15 + 2 * i], reader.line_no),
                       parse_double(fields[16 + 2 * i], reader.line_no)));
    out.push_back(std::move(frame));
  }
  return out;
}

}  // namespace eposit
