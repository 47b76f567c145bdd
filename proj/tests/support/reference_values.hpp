// Generated by make_reference_values.py -- do not edit by hand.
#pragma once

namespace refvals {

struct LogBesselKPoint { double order, x, value; };
inline constexpr LogBesselKPoint kLogBesselK[] = {
    {0.5, 1.0, -0.77420864735527257},
    {0.5, 0.3, 0.52777775480769546},
    {0.5, 7.5, -8.2816601576264049},
    {1.5, 1.0, -0.081061466795327258},
    {2.5, 0.05, 8.8133178253866423},
    {0.0, 0.5, -0.078589769869081417},
    {0.0, 2.0, -2.1724882049757099},
    {0.0, 25.0, -26.388550485954234},
    {1.0, 0.0001, 9.210340322844822},
    {0.25, 1.7, -1.7839529785689424},
    {2.3, 0.7, 1.7877450490835685},
    {-2.3, 0.7, 1.7877450490835685},
    {3.0, 200.0, -202.40154713956107},
    {4.0, 2.1, 0.56136845339623869},
    {7.5, 0.9, 12.798958362922902},
    {12.0, 3.3, 10.555313665088146},
    {30.0, 10.0, 21.431423697690057},
    {49.5, 2.0, 141.90352155624031},
    {100.0, 1.0, 427.75325102501881},
    {149.0, 80.0, 34.221513880164908},
    {151.0, 80.0, 36.988905517045881},
    {200.0, 0.001, 2377.4210145524577},
    {350.0, 1234.5, -1188.562209435427},
    {900.0, 2.0, 5218.9788612090877},
    {2000.0, 500.0, 2124.2825001556881},
    {5000.0, 1.0, 41047.669021294515},
    {5000.0, 4999.0, -2666.992451556245},
    {5000.0, 1000000.0, -999994.18239883153},
    {0.5, 1e-250, 288.04892797690044},
    {1.0, 650.0, -653.01211834891395},
    {0.75, 690.0, -693.04232816074427},
    {-0.5, 0.02, 2.1618028553588005},
    {2.0, 10000.0, -10004.379191342718},
    {60.0, 0.01, 501.73972325004293},
    {149.9, 1.0, 702.71671039749574},
    {150.1, 1.0, 703.85680172222232},
};

struct GammaQPoint { double a, x, value; };
inline constexpr GammaQPoint kGammaQ[] = {
    {0.5, 0.25, 0.47950012218695346},
    {1.0, 1.0, 0.36787944117144232},
    {2.5, 0.1, 0.99911386121118756},
    {2.5, 7.0, 0.015609416100266915},
    {10.0, 9.5, 0.52182602223720741},
    {0.1, 2.0, 0.005673823979811528},
    {50.0, 45.0, 0.75319796559982973},
    {3.5, 1e-06, 1.0},
};

struct IncBetaPoint { double a, b, x, value; };
inline constexpr IncBetaPoint kIncBeta[] = {
    {0.5, 0.5, 0.3, 0.36901011956554538},
    {2.0, 3.0, 0.4, 0.52480000000000004},
    {0.5, 2.0, 0.9, 0.99611746295303949},
    {10.0, 0.5, 0.99, 0.65792817515678433},
    {4.0, 4.0, 0.5, 0.5},
    {1.0, 1.0, 0.123, 0.123},
};

struct TCdfPoint { double x, dof, value; };
inline constexpr TCdfPoint kTCdf[] = {
    {0.7, 4.0, 0.73874991720327488},
    {-2.3, 1.0, 0.13054758708862276},
    {5.0, 2.0, 0.98112522432468814},
    {0.0, 3.0, 0.5},
    {-0.5, 100.0, 0.30908678291544329},
    {12.0, 4.0, 0.99986178572574851},
    {-30.0, 6.0, 4.5495735222216882e-8},
};

struct DigammaPoint { double x, value; };
inline constexpr DigammaPoint kDigamma[] = {
    {0.1, -10.423754940411076},
    {0.5, -1.9635100260214235},
    {1.0, -0.57721566490153286},
    {2.0, 0.42278433509846714},
    {4.7, 1.4374238096317817},
    {25.0, 3.198742512851974},
    {1000.0, 6.9072551956488121},
    {-0.3, 2.1133097796353989},
    {-2.5, 1.1031566406452432},
};

struct NormQuantilePoint { double p, value; };
inline constexpr NormQuantilePoint kNormQuantile[] = {
    {1e-300, -37.047096299361199},
    {1e-12, -7.0344838253011319},
    {0.001, -3.0902323061678135},
    {0.025, -1.9599639845400542},
    {0.3, -0.52440051270804082},
    {0.5, 0.0},
    {0.77, 0.73884684918521369},
    {0.999, 3.0902323061678133},
    {0.999999999999, 7.0344869100478352},
};

} // namespace refvals
