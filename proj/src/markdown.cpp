#include <sstream>

#include "bigact/report.hpp"

namespace bigact::report {

namespace {

std::string text(const Json &v) {
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_boolean())
    return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

void table(std::ostream &os, const std::vector<std::string> &head, const std::vector<std::vector<std::string>> &rows) {
  os << "|";
  for (const auto &h : head)
    os << " " << h << " |";
  os << "\n|";
  for (std::size_t i = 0; i < head.size(); ++i)
    os << "---|";
  os << "\n";
  for (const auto &r : rows) {
    os << "|";
    for (const auto &c : r)
      os << " " << c << " |";
    os << "\n";
  }
  os << "\n";
}

} // namespace

std::string render_markdown(const Json &r) {
  std::ostringstream os;
  const auto &pr = r.at("params");
  os << "# bigact report: p = " << pr.at("p") << ", s = " << pr.at("s") << "\n\n";
  os << "q0 = " << pr.at("q0") << ", q = " << pr.at("q") << ", F_q = F_" << pr.at("p") << "[t]/("
     << text(pr.at("field_modulus")) << "), seed " << r.at("config").at("seed") << ", version "
     << text(r.at("artifact_version")) << "\n\n";

  if (r.contains("uniformizer")) {
    const auto &u = r.at("uniformizer");
    os << "## Uniformizer\n\n";
    table(os, {"a1", "a2", "b1", "b2", "q*b1", "v(residual)", "lowest coeff", "T0 verified"},
          {{text(u.at("a1")), text(u.at("a2")), text(u.at("b1")), text(u.at("b2")), text(u.at("q_b1")),
            text(u.at("residual_valuation")), text(u.at("residual_lowest_coeff")),
            text(u.at("hensel").at("verified"))}});
  }

  if (r.contains("classes")) {
    os << "## Cover classes\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto &c : r.at("classes"))
      rows.push_back({text(c.at("label")), text(c.at("base")), text(c.at("line_count")), text(c.at("conductor")),
                      text(c.at("break")), text(c.at("genus")), std::to_string(c.at("samples").size()),
                      text(c.at("constant_on_samples"))});
    table(os, {"class", "over", "lines", "conductor", "break", "genus", "samples", "constant"}, rows);
  }

  if (r.contains("genus")) {
    const auto &g = r.at("genus");
    os << "## Genus\n\n";
    table(os, {"quantity", "value"},
          {{"g(K(y1))", text(g.at("genus_K_y1"))},
           {"lines over K(y1)", text(g.at("class_count_total"))},
           {"g(F)", text(g.at("genus_F"))},
           {"subtraction (Garcia-Stichtenoth)", text(g.at("gs_subtraction"))},
           {"subtraction (closed-form variant)", text(g.at("alt_subtraction"))},
           {"g(F) with the variant", text(g.at("genus_F_alt_subtraction"))},
           {"Ree genus", text(g.at("ree_genus"))}});
    for (const auto &d : g.at("discrepancies"))
      os << "- " << text(d) << "\n";
    if (!g.at("discrepancies").empty())
      os << "\n";
  }

  if (r.contains("big_action")) {
    const auto &b = r.at("big_action");
    os << "## Big action\n\n";
    table(os, {"|G|", "g(F)", "2p/(p-1) g", "big action", "variant reading", "readings agree"},
          {{text(b.at("group_order")), text(b.at("genus")), text(b.at("bound")), text(b.at("big_action")),
            text(b.at("big_action_alt_reading")), text(b.at("readings_agree"))}});
  }

  if (r.contains("commutators")) {
    const auto &c = r.at("commutators");
    os << "## Commutators\n\n" << text(c.at("convention")) << "\n\n";
    const auto &st = c.at("sigma_tau");
    std::vector<std::string> head{"[sigma_i, tau_j] w-shift"};
    for (std::size_t j = 0; j < st.size(); ++j)
      head.push_back("j = " + std::to_string(j + 1));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < st.size(); ++i) {
      std::vector<std::string> row{"i = " + std::to_string(i + 1)};
      for (const auto &e : st[i])
        row.push_back(text(e.at("w_shift")));
      rows.push_back(row);
    }
    table(os, head, rows);
    os << "[sigma_i, sigma_j] = id for all i, j: " << text(c.at("sigma_sigma_identity")) << "\n\n";
  }

  if (r.contains("prolongations")) {
    os << "## Prolongations of x -> x + a\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto &p : r.at("prolongations").at("samples")) {
      std::vector<std::string> row{text(p.at("a"))};
      for (const auto &s : p.at("shifts"))
        row.push_back(text(s));
      rows.push_back(row);
    }
    table(os, {"a", "y1", "y2", "v1'", "v2'", "w"}, rows);
  }

  if (r.contains("presentation_equivalence")) {
    os << "## Presentation links\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto &l : r.at("presentation_equivalence"))
      rows.push_back({text(l.at("primed")), text(l.at("unprimed")), text(l.at("witness")), text(l.at("verified"))});
    table(os, {"primed", "unprimed", "witness u", "verified"}, rows);
  }

  if (r.contains("audit")) {
    os << "## Formula audit\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto &a : r.at("audit"))
      rows.push_back({text(a.at("item")), text(a.at("closed_form")), text(a.at("pipeline")), text(a.at("status")),
                      text(a.at("difference"))});
    table(os, {"item", "closed form", "pipeline", "status", "difference"}, rows);
  }

  const auto &st = r.at("status");
  os << "## Status\n\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto &[k, v] : st.at("checks").items())
    rows.push_back({k, v.get<bool>() ? "ok" : "FAILED"});
  table(os, {"check", "result"}, rows);
  if (st.contains("failed_check"))
    os << "failed: " << text(st.at("failed_check")) << "\n\n";
  os << "exit code " << st.at("exit_code") << "\n";
  return os.str();
}

} // namespace bigact::report
