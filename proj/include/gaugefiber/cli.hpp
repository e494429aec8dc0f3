#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaugefiber/document.hpp"
#include "gaugefiber/typelang.hpp"

namespace gaugefiber {

/// Outcome of one command invocation. Exit codes: 0 all checks passed,
/// 1 at least one check failed, 2 input or usage error.
struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

namespace cli_detail {

inline void emit_report(const AuditReport& rep, bool as_json,
                        std::ostringstream& out) {
  if (as_json)
    out << to_json(rep).dump(2) << "\n";
  else
    out << rep.to_text();
}

inline AuditReport concordance_report(const Atlas& atlas, double tol) {
  AuditReport full = audit_atlas(atlas, tol);
  AuditReport rep;
  rep.tol = tol;
  for (CheckRecord& r : full.records)
    if (r.check == "concordance" || r.check == "metric-positive")
      rep.records.push_back(std::move(r));
  rep.finalize();
  return rep;
}

}  // namespace cli_detail

/// Parses and runs one command line (without the program name).
inline CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;

  CLI::App app{"verifier for metric and frame data on the standard-model gauge bundles"};
  app.require_subcommand(1);

  struct {
    std::string file;
    double tol = 1e-9;
    bool json = false;
  } conc, audit_cfg;
  struct {
    std::string file, chart, frame;
    double tol = 1e-9;
  } ortho;
  struct {
    std::string file, from, to, point;
  } trans;
  struct {
    std::string file, from, to;
    double tol = 1e-9;
    bool json = false;
  } classify_cfg;
  struct {
    std::string file;
    std::vector<std::string> frames;
    double tol = 1e-9;
    bool json = false;
  } cocycle_cfg;
  struct {
    std::string text;
    std::string ctx = "ew";
  } parse_cfg;

  CLI::App* c_conc = app.add_subcommand(
      "check-concordance", "test metric concordance at every charted point");
  c_conc->add_option("file", conc.file, "bundle document")->required();
  c_conc->add_option("--tol", conc.tol, "residual tolerance");
  c_conc->add_flag("--json", conc.json, "emit the report as JSON");

  CLI::App* c_ortho = app.add_subcommand(
      "orthonormalize", "construct orthonormal-frame transitions for a frame");
  c_ortho->add_option("file", ortho.file, "bundle document")->required();
  c_ortho->add_option("--chart", ortho.chart, "chart id")->required();
  c_ortho->add_option("--frame", ortho.frame, "frame id")->required();
  c_ortho->add_option("--tol", ortho.tol, "residual tolerance");

  CLI::App* c_trans = app.add_subcommand(
      "transition", "print the transition matrix between two frames at a point");
  c_trans->add_option("file", trans.file, "bundle document")->required();
  c_trans->add_option("--from", trans.from, "source frame id")->required();
  c_trans->add_option("--to", trans.to, "target frame id")->required();
  c_trans->add_option("--point", trans.point, "point id")->required();

  CLI::App* c_classify = app.add_subcommand(
      "classify", "classify the transitions between two frames");
  c_classify->add_option("file", classify_cfg.file, "bundle document")->required();
  c_classify->add_option("--from", classify_cfg.from, "source frame id")->required();
  c_classify->add_option("--to", classify_cfg.to, "target frame id")->required();
  c_classify->add_option("--tol", classify_cfg.tol, "residual tolerance");
  c_classify->add_flag("--json", classify_cfg.json, "emit the report as JSON");

  CLI::App* c_audit =
      app.add_subcommand("audit", "run every check the document supports");
  c_audit->add_option("file", audit_cfg.file, "bundle document")->required();
  c_audit->add_option("--tol", audit_cfg.tol, "residual tolerance");
  c_audit->add_flag("--json", audit_cfg.json, "emit the report as JSON");

  CLI::App* c_cocycle = app.add_subcommand(
      "cocycle", "check transition consistency over a triple overlap");
  c_cocycle->add_option("file", cocycle_cfg.file, "bundle document")->required();
  c_cocycle
      ->add_option("--frames", cocycle_cfg.frames,
                   "three frame ids, comma separated")
      ->required()
      ->delimiter(',');
  c_cocycle->add_option("--tol", cocycle_cfg.tol, "residual tolerance");
  c_cocycle->add_flag("--json", cocycle_cfg.json, "emit the report as JSON");

  CLI::App* c_parse =
      app.add_subcommand("parse-type", "parse a tensor type signature");
  c_parse->add_option("signature", parse_cfg.text, "signature text")->required();
  c_parse->add_option("--context", parse_cfg.ctx,
                      "pair ordering: u1 su2 su3 dirac tangent spin ew color "
                      "lepton quark");

  CLI::App* c_registry =
      app.add_subcommand("registry", "print the built-in field catalog");

  std::vector<std::string> argv_storage = args;
  std::vector<const char*> argv;
  argv.push_back("gaugefiber");
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()),
              const_cast<char**>(argv.data()));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return {0, out.str(), err.str()};
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return {2, out.str(), err.str()};
  }

  try {
    if (app.got_subcommand(c_conc)) {
      const Atlas atlas = load_document_file(conc.file);
      const AuditReport rep = cli_detail::concordance_report(atlas, conc.tol);
      cli_detail::emit_report(rep, conc.json, out);
      return {rep.ok() ? 0 : 1, out.str(), err.str()};
    }

    if (app.got_subcommand(c_ortho)) {
      const Atlas atlas = load_document_file(ortho.file);
      const Frame& f = atlas.frame(ortho.frame);
      if (f.chart != ortho.chart)
        raise(errc::unknown_frame, "frame '" + ortho.frame +
                                       "' does not live on chart '" +
                                       ortho.chart + "'");
      AuditReport rep;
      rep.tol = ortho.tol;
      for (const std::string& p : atlas.chart(f.chart).points) {
        CheckRecord rec;
        rec.check = "frame-orthonormalize";
        rec.location = {{"bundle", to_string(f.bundle)},
                        {"frame", ortho.frame},
                        {"point", p}};
        try {
          const auto fm = detail::metrics_in_frame(atlas, f, p);
          const Orthonormalization o = orthonormalize(
              fm.hermitian, fm.skew ? &*fm.skew : nullptr, ortho.tol);
          rec.pass = true;
          rec.residual = std::max(o.post.hermitian_residual,
                                  fm.skew ? o.post.skew_residual : 0.0);
          out << "point " << p << ": transition to an orthonormal frame\n"
              << fmt_mat(o.transition);
        } catch (const Error& e) {
          rec.pass = false;
          rec.detail = errc_name(e.code());
          if (!std::isnan(e.residual())) rec.residual = e.residual();
          out << "point " << p << ": " << e.what() << "\n";
        }
        rep.records.push_back(std::move(rec));
      }
      rep.finalize();
      out << rep.to_text();
      return {rep.ok() ? 0 : 1, out.str(), err.str()};
    }

    if (app.got_subcommand(c_trans)) {
      const Atlas atlas = load_document_file(trans.file);
      const Mat s = transition_matrix(atlas, trans.from, trans.to, trans.point);
      out << "transition " << trans.from << " -> " << trans.to << " at "
          << trans.point << "\n"
          << fmt_mat(s);
      return {0, out.str(), err.str()};
    }

    if (app.got_subcommand(c_classify)) {
      const Atlas atlas = load_document_file(classify_cfg.file);
      const Frame& fa = atlas.frame(classify_cfg.from);
      const Frame& fb = atlas.frame(classify_cfg.to);
      if (fa.bundle != fb.bundle)
        raise(errc::bundle_mismatch, "frames live on different bundles");
      const auto shared = atlas.overlap(fa.chart, fb.chart);
      if (shared.empty())
        raise(errc::no_overlap, "frames '" + classify_cfg.from + "' and '" +
                                    classify_cfg.to + "' do not overlap");
      AuditReport rep;
      rep.tol = classify_cfg.tol;
      for (const std::string& p : shared) {
        const Mat s = detail::stored_or_derived_transition(
            atlas, classify_cfg.from, classify_cfg.to, p);
        const GroupClassification g = classify_group(s, classify_cfg.tol);
        CheckRecord rec;
        rec.check = "classify";
        rec.location = {{"bundle", to_string(fa.bundle)},
                        {"from", classify_cfg.from},
                        {"to", classify_cfg.to},
                        {"point", p}};
        rec.group = to_string(g.tag);
        rec.residual = std::max(g.unitarity_residual, g.det_residual);
        rec.pass = g.tag == expected_group(fa.bundle);
        if (!rec.pass) rec.detail = "transition leaves the structural group";
        rep.records.push_back(std::move(rec));
      }
      rep.finalize();
      cli_detail::emit_report(rep, classify_cfg.json, out);
      return {rep.ok() ? 0 : 1, out.str(), err.str()};
    }

    if (app.got_subcommand(c_audit)) {
      const Atlas atlas = load_document_file(audit_cfg.file);
      const AuditReport rep = audit_atlas(atlas, audit_cfg.tol);
      cli_detail::emit_report(rep, audit_cfg.json, out);
      return {rep.ok() ? 0 : 1, out.str(), err.str()};
    }

    if (app.got_subcommand(c_cocycle)) {
      if (cocycle_cfg.frames.size() != 3)
        raise(errc::document_error, "--frames needs exactly three ids");
      const Atlas atlas = load_document_file(cocycle_cfg.file);
      const CocycleCheck c =
          check_cocycle(atlas, cocycle_cfg.frames[0], cocycle_cfg.frames[1],
                        cocycle_cfg.frames[2], cocycle_cfg.tol);
      AuditReport rep;
      rep.tol = cocycle_cfg.tol;
      CheckRecord rec;
      rec.check = "cocycle";
      rec.location = {{"a", cocycle_cfg.frames[0]},
                      {"b", cocycle_cfg.frames[1]},
                      {"c", cocycle_cfg.frames[2]},
                      {"worst-point", c.worst_point}};
      rec.pass = c.ok;
      rec.residual = c.max_residual;
      if (!c.ok) rec.detail = "cocycle identity violated";
      rep.records.push_back(std::move(rec));
      rep.finalize();
      cli_detail::emit_report(rep, cocycle_cfg.json, out);
      return {rep.ok() ? 0 : 1, out.str(), err.str()};
    }

    if (app.got_subcommand(c_parse)) {
      const SignatureContext& ctx = context(parse_cfg.ctx);
      const TypeSignature sig = parse_signature(parse_cfg.text, ctx);
      out << "canonical: " << print_signature(sig, ctx) << "\n";
      out << "context: " << ctx.name << "\n";
      const auto blocks = sig.nonzero_blocks();
      if (blocks.empty()) {
        out << "blocks: none (scalar)\n";
      } else {
        for (const BlockCounts& b : blocks)
          out << "block " << to_string(b.tag) << ": up=" << b.up
              << " down=" << b.down << " barred-up=" << b.barred_up
              << " barred-down=" << b.barred_down << "\n";
      }
      out << "rank: " << sig.rank() << "\n";
      return {0, out.str(), err.str()};
    }

    if (app.got_subcommand(c_registry)) {
      out << render_registry();
      return {0, out.str(), err.str()};
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return {2, out.str(), err.str()};
  }

  err << "no subcommand given\n";
  return {2, out.str(), err.str()};
}

}  // namespace gaugefiber
