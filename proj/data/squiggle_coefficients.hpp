// Fourier coefficients c(k), k = -20..20, of the closed test fibre.
// Generated once with numpy.random.default_rng(0): standard_normal((3,41)) + 1j*standard_normal((3,41)).
// Regenerating with another RNG gives a different (equally valid) curve.
#pragma once

namespace linequad::data {

inline constexpr int squiggle_modes = 20;

// [component][k + 20] = {re, im}
inline constexpr double squiggle_coefficients[3][41][2] = {
    {
        {0.1257302210933933, -1.4267738509897323},
        {-0.13210486329130189, -0.13504510003701392},
        {0.64042265044328206, -0.76951464017670568},
        {0.10490011715303971, -1.4227417685154136},
        {-0.53566937316111096, 0.25845279091298756},
        {0.36159505490948474, -0.56854945414764257},
        {1.3040000451301372, -1.0298044380114637},
        {0.94708096312924217, -1.0430010800715654},
        {-0.7037352358069926, 0.26841707970891465},
        {-1.2654214710460525, 0.35867194917034445},
        {-0.62327446253735219, 1.3224574697668332},
        {0.041325979347243601, -0.013914668524093734},
        {-2.3250307746388343, 1.0418397592128221},
        {-0.21879166393254573, 1.4022648267725224},
        {-1.2459109472530652, 1.1501656361496921},
        {-0.73226735470345161, -2.3653039062769743},
        {-0.54425898285730989, 1.228683719203421},
        {-0.31630015636915454, 0.33962000824864264},
        {0.41163053637413283, 0.42377135285334727},
        {1.0425133694426776, 0.37122741773625884},
        {-0.12853466294403426, 0.3827571602707609},
        {1.3664634705496859, 0.31941422025238092},
        {-0.66519467348661354, -0.35891330853862047},
        {0.35151007009301971, -1.9016352983759945},
        {0.90347018165180859, -0.10891472790742324},
        {0.094012297760874566, -0.80373184852067658},
        {-0.7434992493538084, 1.0801634125378852},
        {-0.92172537625841944, -0.28876650599537751},
        {-0.45772582566733916, 0.08347535610700986},
        {0.22019512347004941, -0.84960595561014307},
        {-1.0096181835387359, -0.51062246789812671},
        {-0.20917557487171307, -0.011533061686586776},
        {-0.15922500991447772, -1.4853751842635452},
        {0.54084558468580768, 0.30068511429460582},
        {0.21465912250634089, -0.10607225344775092},
        {0.35537270903992141, -1.1857198050052338},
        {-0.65382860941833942, -2.3982328653977714},
        {-0.12961363369276946, 0.51305213388030502},
        {0.7839754700613295, -0.29758403894333035},
        {1.4934311452207607, -0.53000841321815839},
        {-1.2590655321041202, -0.23615462985294203},
    },
    {
        {1.5139237747390626, 1.8164759408811439},
        {1.3458754237823045, -0.049800969059643194},
        {0.78131140070042748, 0.086619262988542126},
        {0.26445563032930353, -1.4870728696753981},
        {-0.31392281453642779, 1.6473390663560998},
        {1.4580206835369587, 0.91748798344429427},
        {1.9602583164499647, 1.066934867005179},
        {1.8016348698661251, 0.0476727312116796},
        {1.31510376473437, 0.91665478882459572},
        {0.35738041065895598, 0.37094683509441023},
        {-1.2083186322821715, 0.61318907785900623},
        {-0.0044541331200832288, -0.15219295840829031},
        {0.65647493507633581, -1.4738879480419591},
        {-1.2883614637495544, 1.0288543478031831},
        {0.39512206018200824, -1.934959636609707},
        {0.42986369482223002, -0.23993667125803605},
        {0.69604272396286848, -0.20452248839966083},
        {-1.1841179667571891, -1.0428601409845046},
        {-0.66170257203903493, 0.61312313633657978},
        {-0.43643524714322124, -0.20032970140956835},
        {-1.1698019077728641, -0.43686832559728161},
        {1.739367877130134, 0.51984173097764119},
        {-0.49591072844215189, -0.47657904055841377},
        {0.32896962946020208, 1.3889799748383085},
        {-0.258572545473924, 0.35145507618731386},
        {1.5834728788021222, -0.47433298683443925},
        {1.3203609870818391, -1.9442649759855442},
        {0.63335262282491522, -1.3077531969011476},
        {-2.2035098806466507, 1.0868307847683634},
        {0.052028974259886507, -0.050604063111342405},
        {0.68368619077653447, -0.28312506567953472},
        {1.0039615758421696, 1.6432516142426969},
        {-0.61790704470760083, -1.2826492440738984},
        {1.8220113633283233, -0.58565779984135935},
        {-1.3204309700132935, -0.47258767675848407},
        {-0.66152802181521908, 0.58633728153130038},
        {0.93504998811402207, -0.66353519830404695},
        {0.049054613825311656, -0.61341784861402815},
        {2.0023925836452552, -1.6051493968851136},
        {0.18851919251246557, 0.72934940401785664},
        {-0.63319409019222672, 0.80613935851502194},
    },
    {
        {-0.37756350523280824, -0.47637674740116198},
        {-1.0911461176191954, 0.16333994554129863},
        {-1.277680166386608, -1.2926461227593415},
        {0.63041149076823189, -0.47181315474090207},
        {0.58116581241280574, 1.3779509527225211},
        {1.2945588194411171, 0.13573073406713437},
        {-0.7546057912599311, 2.3103634867958882},
        {1.6891074524436731, -0.78719274215715773},
        {-0.28738770780866629, 0.58028441672430753},
        {1.5744082788445868, -0.19550582783310236},
        {-0.43278584718259677, 0.56581784682809311},
        {-0.73548329234227505, -0.0072113596587564995},
        {0.24978537155866684, -0.56119811040915912},
        {1.0314530848694723, -0.86761676432170265},
        {0.16100957671534466, 3.0660367390488967},
        {-0.58552882412333662, -0.077345059724216028},
        {-1.3412197140766691, -2.0166606902332451},
        {-1.401520214917428, -0.64860060790333462},
        {0.50268284987486567, 0.67803972712399707},
        {0.98971303328580496, -0.50000843318474819},
        {-0.1642945926252907, 1.3604462024852575},
        {-1.0743648582284346, 1.0023982728439578},
        {0.87304215262170659, -0.15233863582423579},
        {-1.2803939447145731, -0.47221594277604334},
        {-0.71306809505927216, -1.0048010070276965},
        {0.62101785354009853, -0.69996654231332467},
        {-2.2501411735745918, -1.4731430746656251},
        {0.38636959756630584, 1.2043962915330844},
        {-0.58164083640950315, 1.5907007871260619},
        {0.10927969747781388, -1.2561380697277329},
        {-0.075701526220823115, -1.1816829756864633},
        {0.20211439504395987, -1.7685118570869169},
        {0.69417193670700816, -0.96385423073217402},
        {-0.75836975089840919, -3.1063368012832915},
        {1.4209820223119163, -1.1422789566319196},
        {0.726093788947765, 1.2969153998005238},
        {0.84373266230326804, -0.34567252946446497},
        {1.1648639811110282, 0.85458423485340829},
        {0.7875882217058694, -0.48896906384204492},
        {0.84407868057859203, 1.760667296993123},
        {0.07559361074288512, 0.19921798301385701},
    },
};

}  // namespace linequad::data
