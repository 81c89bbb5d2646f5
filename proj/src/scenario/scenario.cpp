#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "starworlds/errors.hpp"
#include "starworlds/scenario/scenario.hpp"

namespace starworlds::scenario {

using namespace geom;

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

geom::SimplePolygon inflate_polygon(const SimplePolygon& p, double r, int disc_segments) {
    if (r <= 0) return p;
    const size_t n = p.size();
    std::vector<Point2> out;
    double step = 2.0 * M_PI / disc_segments;
    for (size_t i = 0; i < n; ++i) {
        const Point2& prev = p.at_wrapped(long(i) - 1);
        const Point2& cur = p[i];
        const Point2& next = p[(i + 1) % n];
        Vec2 din = (cur - prev).normalized();
        Vec2 dout = (next - cur).normalized();
        Vec2 n1 = Vec2{din.y, -din.x};  // outward normal of a CCW edge
        Vec2 n2 = Vec2{dout.y, -dout.x};
        if (orient(prev, cur, next) != Orientation::CW) {
            // Convex corner: join the two offset edges by an arc.
            out.push_back(cur + n1 * r);
            double a1 = n1.angle();
            double sweep = angle_norm(n2.angle() - a1);
            for (double a = step; a < sweep - 1e-12; a += step)
                out.push_back(cur + Vec2{std::cos(a1 + a), std::sin(a1 + a)} * r);
            out.push_back(cur + n2 * r);
        } else {
            // Reflex corner: offset edge lines meet at a single point.
            Point2 p1 = cur + n1 * r;
            Point2 p2 = cur + n2 * r;
            double den = din.cross(dout);
            if (std::abs(den) < 1e-12) {
                out.push_back(p1);
            } else {
                double t = (p2 - p1).cross(dout) / den;
                out.push_back(p1 + din * t);
            }
        }
    }
    return make_simple_polygon(std::move(out));
}

std::vector<Obstacle> Scenario::inflated() const {
    std::vector<Obstacle> out = obstacles;
    if (inflation <= 0) return out;
    for (auto& o : out) {
        if (auto* e = std::get_if<Ellipse>(&o.shape)) {
            e->a += inflation;
            e->b += inflation;
        } else {
            o.shape = inflate_polygon(std::get<SimplePolygon>(o.shape), inflation);
        }
    }
    return out;
}

namespace {

struct LineParser {
    std::string name;
    int lineno = 0;
    std::istringstream fields;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(name + ":" + std::to_string(lineno) + ": " + what);
    }
    double num(const char* what) {
        std::string tok;
        if (!(fields >> tok)) fail(std::string("missing ") + what);
        try {
            size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size() || !std::isfinite(v)) fail(std::string("bad ") + what);
            return v;
        } catch (const std::exception&) {
            fail(std::string("bad ") + what + " '" + tok + "'");
        }
    }
    long integer(const char* what) {
        double v = num(what);
        if (v != std::floor(v)) fail(std::string("non-integer ") + what);
        return long(v);
    }
    bool more() {
        fields >> std::ws;
        return fields.peek() != EOF;
    }
    std::string word() {
        std::string tok;
        fields >> tok;
        return tok;
    }
};

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& name) {
    Scenario s;
    std::istringstream in(text);
    std::string line;
    LineParser lp;
    lp.name = name;
    bool have_header = false, have_robot = false, have_goal = false;

    while (std::getline(in, line)) {
        ++lp.lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        lp.fields = std::istringstream(line);
        std::string key;
        if (!(lp.fields >> key)) continue;

        if (!have_header) {
            if (key != "starworlds") lp.fail("expected 'starworlds <version>' header");
            long version = lp.integer("version");
            if (version != 1)
                throw SchemaVersionError(name + ": unsupported schema version " +
                                         std::to_string(version));
            have_header = true;
            continue;
        }
        if (key == "seed") {
            s.seed = uint64_t(lp.integer("seed"));
        } else if (key == "robot") {
            s.robot = {lp.num("x"), lp.num("y")};
            have_robot = true;
        } else if (key == "goal") {
            s.goal = {lp.num("x"), lp.num("y")};
            have_goal = true;
        } else if (key == "inflation") {
            s.inflation = lp.num("radius");
            if (s.inflation < 0) lp.fail("inflation must be >= 0");
        } else if (key == "kernel_side") {
            s.form.kernel_side_length = lp.num("kernel side");
            if (s.form.kernel_side_length <= 0) lp.fail("kernel_side must be > 0");
        } else if (key == "exclude_obstacle_points") {
            s.form.exclude_obstacle_points = lp.integer("flag") != 0;
        } else if (key == "max_iterations") {
            s.form.max_iterations = int(lp.integer("count"));
        } else if (key == "dt") {
            s.planner.dt = lp.num("dt");
        } else if (key == "vmax") {
            s.planner.v_max = lp.num("vmax");
        } else if (key == "max_steps") {
            s.planner.max_steps = int(lp.integer("count"));
        } else if (key == "eps_goal") {
            s.planner.eps_goal = lp.num("eps_goal");
        } else if (key == "ellipse") {
            Obstacle o;
            o.id = int(lp.integer("id"));
            double cx = lp.num("cx"), cy = lp.num("cy");
            double a = lp.num("semi-axis a"), b = lp.num("semi-axis b");
            double rot = lp.num("rotation");
            if (a <= 0 || b <= 0)
                lp.fail("ellipse " + std::to_string(o.id) + ": semi-axes must be positive");
            if (lp.more()) {
                o.velocity.x = lp.num("vx");
                o.velocity.y = lp.num("vy");
            }
            o.shape = Ellipse{{cx, cy}, a, b, rot};
            s.obstacles.push_back(std::move(o));
        } else if (key == "polygon") {
            Obstacle o;
            o.id = int(lp.integer("id"));
            std::vector<Point2> verts;
            while (lp.more()) {
                std::istringstream& f = lp.fields;
                auto pos = f.tellg();
                std::string tok;
                f >> tok;
                if (tok == "vel") {
                    o.velocity.x = lp.num("vx");
                    o.velocity.y = lp.num("vy");
                    break;
                }
                f.seekg(pos);
                double x = lp.num("vertex x");
                double y = lp.num("vertex y");
                verts.push_back({x, y});
            }
            try {
                o.shape = make_simple_polygon(std::move(verts), /*allow_cw_fix=*/true);
            } catch (const MalformedInput& e) {
                lp.fail("polygon " + std::to_string(o.id) + ": " + e.what());
            }
            s.obstacles.push_back(std::move(o));
        } else {
            lp.fail("unknown directive '" + key + "'");
        }
    }
    if (!have_header) throw ParseError(name + ": missing 'starworlds' header");
    if (!have_robot) throw ParseError(name + ": missing robot position");
    if (!have_goal) throw ParseError(name + ": missing goal position");
    for (size_t i = 0; i < s.obstacles.size(); ++i)
        for (size_t j = i + 1; j < s.obstacles.size(); ++j)
            if (s.obstacles[i].id == s.obstacles[j].id)
                throw ParseError(name + ": duplicate obstacle id " +
                                 std::to_string(s.obstacles[i].id));
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream os;
    auto f = format_double;
    os << "starworlds 1\n";
    os << "seed " << s.seed << "\n";
    os << "robot " << f(s.robot.x) << " " << f(s.robot.y) << "\n";
    os << "goal " << f(s.goal.x) << " " << f(s.goal.y) << "\n";
    os << "inflation " << f(s.inflation) << "\n";
    os << "kernel_side " << f(s.form.kernel_side_length) << "\n";
    os << "exclude_obstacle_points " << (s.form.exclude_obstacle_points ? 1 : 0) << "\n";
    os << "max_iterations " << s.form.max_iterations << "\n";
    os << "dt " << f(s.planner.dt) << "\n";
    os << "vmax " << f(s.planner.v_max) << "\n";
    os << "max_steps " << s.planner.max_steps << "\n";
    os << "eps_goal " << f(s.planner.eps_goal) << "\n";
    for (const auto& o : s.obstacles) {
        if (const auto* e = std::get_if<Ellipse>(&o.shape)) {
            os << "ellipse " << o.id << " " << f(e->center.x) << " " << f(e->center.y) << " "
               << f(e->a) << " " << f(e->b) << " " << f(e->rotation) << " " << f(o.velocity.x)
               << " " << f(o.velocity.y) << "\n";
        } else {
            os << "polygon " << o.id;
            for (const auto& v : std::get<SimplePolygon>(o.shape).v)
                os << " " << f(v.x) << " " << f(v.y);
            os << " vel " << f(o.velocity.x) << " " << f(o.velocity.y) << "\n";
        }
    }
    return os.str();
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::string text = serialize_scenario(s);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ParseError(path + ": cannot open for writing");
        out << text;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ParseError(path + ": cannot finalize write");
}

}  // namespace starworlds::scenario
