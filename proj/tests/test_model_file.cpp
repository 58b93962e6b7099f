#include <gtest/gtest.h>

#include <regex>

#include "rstab/model_file.hpp"

using namespace rstab;

namespace {

std::string reference_text() { return write_model(reference_model()); }

std::string without_line(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    std::string out, line;
    while (std::getline(in, line))
        if (line.rfind(prefix, 0) != 0)
            out += line + "\n";
    return out;
}

void expect_same(const ModelDefinition& a, const ModelDefinition& b) {
    EXPECT_EQ(a.flight.V0, b.flight.V0);
    EXPECT_EQ(a.flight.m, b.flight.m);
    EXPECT_EQ(a.flight.Iy, b.flight.Iy);
    EXPECT_EQ(a.flight.rho, b.flight.rho);
    EXPECT_EQ(a.flight.S, b.flight.S);
    EXPECT_EQ(a.flight.c, b.flight.c);
    EXPECT_EQ(a.flight.g, b.flight.g);
    EXPECT_EQ(a.derivatives.X, b.derivatives.X);
    EXPECT_EQ(a.derivatives.Z, b.derivatives.Z);
    EXPECT_EQ(a.derivatives.M, b.derivatives.M);
    EXPECT_EQ(a.controller.gain, b.controller.gain);
    EXPECT_EQ(a.controller.zeros, b.controller.zeros);
    EXPECT_EQ(a.controller.poles, b.controller.poles);
}

}  // namespace

TEST(ModelFile, RoundTripIsExact) {
    const ModelDefinition def = reference_model();
    expect_same(parse_model(write_model(def)), def);
    EXPECT_EQ(write_model(parse_model(write_model(def))), write_model(def));
}

TEST(ModelFile, BundledFileMatchesBuiltIn) {
    expect_same(load_model(RSTAB_DATA_DIR "/cg_aircraft.model"), reference_model());
}

TEST(ModelFile, CommentsAndOptionalFields) {
    std::string text = reference_text();
    text = without_line(text, "g =");
    text = without_line(text, "gamma_e");
    text = "# header comment\n\n" + std::regex_replace(text, std::regex("V0 = 100"), "V0 = 100   # m/s");
    const ModelDefinition def = parse_model(text);
    EXPECT_EQ(def.flight.V0, 100.0);
    EXPECT_EQ(def.flight.g, aircraft::kStandardGravity);
}

TEST(ModelFile, ControllerSectionIsOptional) {
    std::string text = reference_text();
    text = text.substr(0, text.find("[controller]"));
    const ModelDefinition def = parse_model(text);
    EXPECT_EQ(def.controller.gain, reference_controller().gain);
}

TEST(ModelFile, MissingFieldIsNamed) {
    try {
        (void)parse_model(without_line(reference_text(), "V0"));
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "V0");
        EXPECT_NE(std::string(e.what()).find("V0"), std::string::npos);
    }
    try {
        (void)parse_model(without_line(reference_text(), "M_wdot"));
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "M_wdot");
    }
}

TEST(ModelFile, ErrorsCarryLineNumbers) {
    const std::string base = reference_text();
    const auto line_of = [](const std::string& text, const std::string& needle) {
        return static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(text.find(needle)), '\n') + 1);
    };
    {
        const std::string text = std::regex_replace(base, std::regex("S = 50"), "S = fifty");
        try {
            (void)parse_model(text);
            FAIL();
        } catch (const ParseError& e) {
            EXPECT_EQ(e.field(), "S");
            EXPECT_EQ(e.line(), line_of(text, "S = fifty"));
        }
    }
    {
        const std::string text = std::regex_replace(base, std::regex("m = 12500"), "m = 12500\nwingspan = 8");
        try {
            (void)parse_model(text);
            FAIL();
        } catch (const ParseError& e) {
            EXPECT_EQ(e.field(), "wingspan");
            EXPECT_EQ(e.line(), line_of(text, "wingspan"));
        }
    }
    EXPECT_THROW((void)parse_model(std::regex_replace(base, std::regex("m = 12500"), "m = 12500\nm = 1")), ParseError);
    EXPECT_THROW((void)parse_model("[weather]\n"), ParseError);
    EXPECT_THROW((void)parse_model(std::regex_replace(base, std::regex("V0 = 100"), "V0 = -100")), ParseError);
}

TEST(ModelFile, RejectsNonConjugateController) {
    const std::string text = std::regex_replace(reference_text(), std::regex("poles = .*"), "poles = -1+2j, -3");
    EXPECT_THROW((void)parse_model(text), ParseError);
}

TEST(ModelFile, DerivedSectionIgnored) {
    const std::string text = reference_text() + "\n[derived]\nH = 1 2; 3 4\nanything goes here\n";
    expect_same(parse_model(text), reference_model());
}

TEST(ModelFile, ComplexFormatting) {
    EXPECT_EQ(format_complex({-3.61, 0.75}), "-3.61+0.75j");
    EXPECT_EQ(format_complex({-3.61, -0.75}), "-3.61-0.75j");
    EXPECT_EQ(format_complex({2.0, 0.0}), "2");
    EXPECT_EQ(format_double(0.1), "0.1");
}
